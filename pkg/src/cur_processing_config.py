# Python
from dataclasses import dataclass, field
from typing import List, Optional
from pathlib import Path
from enum import Enum, auto

# 3rd Party
from omegaconf import MISSING

# 1st Party
from .cur.dataclasses_and_types import CurVariant, CurFidelity
from .linalg.dataclasses_and_types import CurArgumentError


class InstanceKind(Enum):
    LowRankPlusNoise = auto()
    ExactRank = auto()
    SparseRandom = auto()
    SparseExactRank = auto()
    Adversarial = auto()



@dataclass
class CurConstantOverrides():
    """ Any field left at None takes the variant's default for the chosen fidelity. """
    c1: Optional[int] = None

    c2_factor: Optional[float] = None

    h1: Optional[int] = None
    h2: Optional[int] = None

    r1: Optional[int] = None

    # Defaults to c2_factor
    r2_factor: Optional[float] = None

    xi_u: Optional[int] = None

    # Calibration constant of every subspace-embedding dimension xi = ceil(xi_constant * d^2 / eps^2)
    xi_constant: float = 40.0


@dataclass
class CurConfig():
    rank: int = MISSING

    epsilon: float = MISSING

    variant: CurVariant = CurVariant.Deterministic

    fidelity: CurFidelity = CurFidelity.Paper

    seed: int = 0

    # Randomized variants are rerun with derived seeds, keeping the best ratio
    trials: int = 1

    # Rank-deficient leverage sketches are redrawn at most this many times
    retry_budget: int = 3

    # Deterministic variant only: raise when a guaranteed bound fails
    assert_guarantees: bool = True

    record_stage_residuals: bool = True

    constants: CurConstantOverrides = field(default_factory=CurConstantOverrides)

    def __post_init__(self):
        # Schema construction (OmegaConf.structured) runs with MISSING placeholders, nothing to validate then
        if isinstance(self.rank, int) and self.rank < 1:
            raise CurArgumentError(f"rank must be at least 1, got {self.rank}")
        if isinstance(self.epsilon, (int, float)) and not 0.0 < self.epsilon <= 1.0:
            raise CurArgumentError(f"epsilon must lie in (0, 1], got {self.epsilon}")
        if isinstance(self.trials, int) and self.trials < 1:
            raise CurArgumentError(f"trials must be at least 1, got {self.trials}")
        if isinstance(self.retry_budget, int) and self.retry_budget < 0:
            raise CurArgumentError(f"retry_budget must be non-negative, got {self.retry_budget}")



@dataclass
class InstanceGeneratorSpec():
    kind: InstanceKind = InstanceKind.LowRankPlusNoise
    m: int = 100
    n: int = 100
    rank: int = 5
    noise: float = 0.1
    density: float = 0.01
    seed: int = 0

    # Adversarial instances only
    block_width: int = 4
    alpha: float = 1e-10


@dataclass
class BenchEntry():
    name: str = MISSING

    # Exactly one of 'input' and 'generator' is used, 'input' wins when both are given
    input: Optional[Path] = None
    generator: Optional[InstanceGeneratorSpec] = None

    decomposition: CurConfig = field(default_factory=CurConfig)


@dataclass
class BenchSuite():
    # Entries run on a thread pool when > 1
    workers: int = 1

    entries: List[BenchEntry] = field(default_factory=list)



@dataclass
class SettingsData():
    path_to_input: Optional[Path] = None

    path_to_output: Path = MISSING


@dataclass
class Settings():
    decomposition: CurConfig = field(default_factory=CurConfig)

    data: SettingsData = field(default_factory=SettingsData)

# Python
from dataclasses import dataclass, field
from typing import Dict, List, Optional

# 3rd Party
import numpy as np

# 1st Party
from .cur_variant import CurVariant, CurFidelity


# CurDiagnostics is serialized with jsons as part of RunReport, so it only holds plain python values.
@dataclass
class CurDiagnostics():
    variant: CurVariant = CurVariant.Deterministic
    fidelity: CurFidelity = CurFidelity.Paper
    seed: Optional[int] = None
    trial: int = 0
    rank: int = 0
    epsilon: float = 0.0
    constants: Dict[str, int] = field(default_factory=dict)
    column_scales: List[float] = field(default_factory=list)
    row_scales: List[float] = field(default_factory=list)
    retries: int = 0
    subspace_full_rank: bool = True
    exact_svd_substitute: bool = False
    residuals: Dict[str, float] = field(default_factory=dict)
    stage_seconds: Dict[str, float] = field(default_factory=dict)


@dataclass
class CurDecomposition():
    """ A ~ C U R, with C and R holding raw (unscaled) columns and rows of A.

    The scale factors of the sampling stages are folded into U and kept in the diagnostics.
    """
    column_indices: np.ndarray
    row_indices: np.ndarray
    c_matrix: np.ndarray
    u_matrix: np.ndarray
    r_matrix: np.ndarray
    k: int
    diagnostics: CurDiagnostics = field(default_factory=CurDiagnostics)

    @property
    def c(self) -> int:
        return self.column_indices.shape[0]

    @property
    def r(self) -> int:
        return self.row_indices.shape[0]

    def reconstruct(self) -> np.ndarray:
        return self.c_matrix @ (self.u_matrix @ self.r_matrix)

# Python
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

# 3rd Party

# 1st Party
from .dataclasses_and_types import CurVariant, CurFidelity
from ..linalg.dataclasses_and_types import CurArgumentError

if TYPE_CHECKING:
    from ..cur_processing_config import CurConfig


@dataclass(frozen=True)
class CurConstants():
    c1: int
    c2: int
    h1: int
    h2: int
    r1: int
    r2: int
    xi_u: int
    xi_constant: float

    @property
    def c(self) -> int:
        return self.c1 + self.c2

    @property
    def r(self) -> int:
        return self.r1 + self.r2

    def as_dict(self) -> dict[str, int]:
        return {
            "c1": self.c1, "c2": self.c2, "h1": self.h1, "h2": self.h2,
            "r1": self.r1, "r2": self.r2, "xi_u": self.xi_u,
        }


# c2 = ceil(factor * k / epsilon), per variant and fidelity
_ADAPTIVE_FACTORS = {
    CurFidelity.Paper: {CurVariant.Linear: 1620.0, CurVariant.Sparse: 4820.0, CurVariant.Deterministic: 10.0},
    CurFidelity.Heuristic: {CurVariant.Linear: 4.0, CurVariant.Sparse: 8.0, CurVariant.Deterministic: 10.0},
}


def resolve_constants(config: CurConfig, m: int, n: int) -> CurConstants:
    """ Turns a config into concrete sample sizes for an m x n input.

    Raises:
        CurArgumentError: paper constants do not fit the input, or even heuristic ones cannot.
    """
    k = config.rank
    epsilon = config.epsilon
    overrides = config.constants

    adaptive_factor = overrides.c2_factor or _ADAPTIVE_FACTORS[config.fidelity][config.variant]
    row_adaptive_factor = overrides.r2_factor or adaptive_factor

    c1 = overrides.c1 or 4 * k
    r1 = overrides.r1 or 4 * k
    c2 = int(math.ceil(adaptive_factor * k / epsilon))
    r2 = int(math.ceil(row_adaptive_factor * k / epsilon))
    h1 = overrides.h1 or int(math.ceil(16 * k * math.log(20 * k)))
    h2 = overrides.h2 or int(math.ceil(8 * k * math.log(20 * k)))
    xi_u = overrides.xi_u or int(math.ceil(overrides.xi_constant * k * k / (epsilon * epsilon)))

    uses_leverage = config.variant != CurVariant.Deterministic

    if config.fidelity == CurFidelity.Paper:
        if c1 + c2 > n or r1 + r2 > m:
            raise CurArgumentError(
                f"paper constants need c = {c1 + c2} <= n = {n} and r = {r1 + r2} <= m = {m}; "
                f"use heuristic fidelity or a larger input"
            )
        if uses_leverage and (h1 > n or h2 > m):
            raise CurArgumentError(f"paper constants need h1 = {h1} <= n = {n} and h2 = {h2} <= m = {m}")
    else:
        h1 = min(h1, n)
        h2 = min(h2, m)

    if uses_leverage:
        if h1 < c1 or h2 < r1:
            raise CurArgumentError(f"leverage samples h1 = {h1}, h2 = {h2} cannot feed c1 = {c1}, r1 = {r1}")
    elif c1 > n or r1 > m:
        raise CurArgumentError(f"c1 = {c1} and r1 = {r1} must fit into the {m} x {n} input")

    return CurConstants(c1=c1, c2=c2, h1=h1, h2=h2, r1=r1, r2=r2, xi_u=xi_u, xi_constant=overrides.xi_constant)


# Python
from dataclasses import dataclass
from typing import Optional

# 3rd Party

# 1st Party


@dataclass
class EvaluationReport():
    err_sq: float = 0.0     # ||A - CUR||_F^2
    opt_sq: float = 0.0     # ||A - A_k||_F^2
    ratio: Optional[float] = None   # None when opt_sq is zero, see 'exact'
    c: int = 0
    r: int = 0
    rank_u: int = 0
    exact: bool = False     # opt_sq is zero and CUR reproduces A

    def ratio_or_zero(self) -> float:
        """ Ordering key for picking the best of several trials. """
        if self.ratio is None:
            return 0.0 if self.exact else float("inf")
        return self.ratio

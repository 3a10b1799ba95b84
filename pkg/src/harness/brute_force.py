# Python
from __future__ import annotations

import math
import logging
import itertools
from typing import TYPE_CHECKING, Callable, Iterable, Optional, Union

# 3rd Party
import numpy as np

# 1st Party
from ..linalg import matrix_core
from ..linalg import subspace_approx
from ..linalg.dataclasses_and_types import CurArgumentError, CombinatorialBudgetError

if TYPE_CHECKING:
    from ..cli import ProgressItemGeneratorCLI


COMBINATORIAL_BUDGET = 1_000_000


def _plain_loop(elements: Iterable, **kwargs):
    return elements


def brute_force_best_columns(A: matrix_core.Matrix, c: int, k: int,
                             loop_wrapper: Optional[Union[ProgressItemGeneratorCLI, Callable]] = None):
    """ Exhaustive search for the c columns of A minimizing ||A - Pi_{C,k}(A)||_F^2.

    Returns:
        (best subset as a tuple of 0-based indices, its residual). Ties go to the lexicographically first subset.

    Raises:
        CombinatorialBudgetError: binomial(n, c) exceeds the budget of one million subsets.
    """
    dense = matrix_core.to_dense(matrix_core.as_operand(A), label="brute force")
    n = dense.shape[1]

    if not 1 <= c <= n:
        raise CurArgumentError(f"c must lie in [1, {n}], got {c}")
    if k < 1:
        raise CurArgumentError(f"k must be at least 1, got {k}")

    subsets = math.comb(n, c)
    if subsets > COMBINATORIAL_BUDGET:
        raise CombinatorialBudgetError(
            f"binomial({n}, {c}) = {subsets} subsets exceeds the budget of {COMBINATORIAL_BUDGET}"
        )

    loop_wrapper = loop_wrapper or _plain_loop

    best_subset: tuple[int, ...] = ()
    best_value = math.inf
    for subset in loop_wrapper(itertools.combinations(range(n), c), total=subsets, desc=f"Best {c} of {n} columns"):
        value = subspace_approx.column_space_rank_k_residual_sq(dense, dense[:, subset], k)
        if value < best_value:
            best_value = value
            best_subset = subset

    logging.debug(f"Best {c} of {n} columns: {best_subset}, residual {best_value:.6g}")
    return best_subset, best_value


def brute_force_best_rows(A: matrix_core.Matrix, r: int, k: int,
                          loop_wrapper: Optional[Union[ProgressItemGeneratorCLI, Callable]] = None):
    """ Row counterpart of brute_force_best_columns(): the r rows minimizing ||A - Pi^rows_{R,k}(A)||_F^2. """
    dense = matrix_core.to_dense(matrix_core.as_operand(A), label="brute force")
    return brute_force_best_columns(np.ascontiguousarray(dense.T), r, k, loop_wrapper)

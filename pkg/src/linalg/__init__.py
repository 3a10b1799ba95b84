from .matrix_core import Matrix
from .matrix_core import as_operand
from .matrix_core import svd
from .matrix_core import truncate
from .matrix_core import pinv
from .matrix_core import qr
from .matrix_core import frobenius_sq
from .matrix_core import spectral_norm
from .matrix_core import DenseAllocationAudit

from .sketch import make_sse
from .sketch import apply_sse
from .sketch import jlt

from .approx_svd import deterministic_svd
from .approx_svd import randomized_svd
from .approx_svd import sparse_svd

from .subset_select import rand_sampling
from .subset_select import bss_sampling
from .subset_select import bss_sampling_sparse

from .adaptive import adaptive_cols
from .adaptive import adaptive_rows
from .adaptive import adaptive_cols_sparse
from .adaptive import adaptive_rows_sparse
from .adaptive import adaptive_rows_d
from .adaptive import adaptive_cols_d

from .subspace_approx import best_subspace_svd
from .subspace_approx import approx_subspace_svd
from .subspace_approx import rank_constrained_u

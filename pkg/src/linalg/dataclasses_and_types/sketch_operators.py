# Python
from dataclasses import dataclass

# 3rd Party
import numpy as np
import scipy.sparse as sps

# 1st Party


@dataclass(frozen=True)
class SparseEmbedding():
    """ Sparse subspace embedding W (xi x n) stored implicitly.

    Source index i lands in bucket 'buckets[i]' with sign 'signs[i]', so W has exactly one +-1 per column. W itself is
    never densified.
    """
    target_dimension: int       # xi
    source_dimension: int       # n
    buckets: np.ndarray         # int64, length n, values in [0, xi)
    signs: np.ndarray           # float64, length n, values in {-1, +1}

    def as_sparse_operator(self) -> sps.csr_array:
        """ The xi x n operator in CSR form, one stored entry per column. """
        return sps.csr_array(
            (self.signs, (self.buckets, np.arange(self.source_dimension))),
            shape=(self.target_dimension, self.source_dimension)
        )

    def occupied_buckets(self) -> np.ndarray:
        return np.unique(self.buckets)


@dataclass(frozen=True)
class SignSketch():
    """ s x m matrix of i.i.d. +-1/sqrt(s) entries. """
    entries: np.ndarray

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

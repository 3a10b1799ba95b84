# Widely used linear-algebra types live here, away from the modules that produce them, so that importing a type never
# drags in (and circularly re-imports) the algorithms.

from .errors import CurError
from .errors import CurArgumentError
from .errors import CombinatorialBudgetError
from .errors import MatrixMarketParseError
from .errors import NumericalFailureError
from .errors import ConditioningError
from .errors import RankDeficientSketchError
from .errors import InvariantViolationError

from .factorizations import SvdFactorization, QrFactorization
from .factor_z import FactorZ, SvdMode
from .sketch_operators import SparseEmbedding, SignSketch
from .selections import SamplingPair, WeightedSelection
from .distributions import ResidualDistribution, AdaptiveSelection, DiscreteDistribution
from .subspace_factor import SubspaceFactor

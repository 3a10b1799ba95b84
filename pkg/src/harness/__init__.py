from .adversarial import AdversarialInstance
from .adversarial import gen_adversarial
from .adversarial import rank_deficient_u_ratio

from .brute_force import brute_force_best_columns
from .brute_force import brute_force_best_rows

from .instance_generators import exact_rank
from .instance_generators import low_rank_plus_noise
from .instance_generators import sparse_random
from .instance_generators import sparse_exact_rank
from .instance_generators import make_instance

from .decomposition_artifacts import write_decomposition
from .decomposition_artifacts import read_decomposition

from .reporting import build_run_report
from .reporting import write_run_report
from .reporting import read_run_report
from .reporting import within_guarantee

from .bench import run_bench_suite
from .bench import BenchSummary

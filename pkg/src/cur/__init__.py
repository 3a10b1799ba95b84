from .cur_factory import create_cur_pipeline_factory
from .cur_factory import create_cur_pipeline
from .cur_factory import cur_linear_time
from .cur_factory import cur_input_sparsity
from .cur_factory import cur_deterministic

from .evaluation import evaluate

from .intersection import intersection_matrix_forms
from .intersection import cur_from_indices

from .cur_runner import run_trials
from .cur_runner import trial_generators
from .cur_runner import TrialOutcome

# Types shared by pipelines, the harness and the CLI. Kept apart from the pipeline modules so the config module can
# import them without importing the pipelines.

from .cur_variant import CurVariant, CurFidelity
from .cur_decomposition import CurDecomposition, CurDiagnostics
from .evaluation_report import EvaluationReport
from .run_report import RunReport

from .progress_item_generator_cli import ProgressItemGeneratorCLI
from .exit_code import ExitCode

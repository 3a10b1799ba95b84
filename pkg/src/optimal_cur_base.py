# Python
from __future__ import annotations

import time
import logging
from pathlib import Path
from typing import TYPE_CHECKING, Optional


# 3rd Party


# 1st Party
from .developer_options import DeveloperOptions

from .components import FileOperations
from .components import read_matrix
from .components import write_matrix
from .components import format_ratio

from .cur import run_trials
from .cur import evaluate
from .cur.dataclasses_and_types import EvaluationReport, RunReport

from .harness import AdversarialInstance
from .harness import gen_adversarial
from .harness import write_decomposition
from .harness import read_decomposition
from .harness import build_run_report
from .harness import write_run_report
from .harness import read_run_report
from .harness import run_bench_suite
from .harness import BenchSummary

from .linalg.dataclasses_and_types import CurArgumentError

from src.cur_processing_config import Settings
from src.cur_processing_config import BenchSuite

if TYPE_CHECKING:
    from .cli import ProgressItemGeneratorCLI


class OptimalCurBase:
    """ Runs the decompose / verify / gen-adversarial / bench operations behind the command-line interface.

    Every operation writes into the output directory given at construction, which also receives the log file.
    """

    def __init__(self, path_to_output: Path) -> None:
        self.path_to_output = FileOperations.ensure_directory(Path(path_to_output).absolute())

        self._init_logger(self.path_to_output)

        logging.info(f"Output directory: {self.path_to_output}")


    def _init_logger(self, path_to_output: Path):
        # Configures Pythons 'root' logger
        path_to_log = path_to_output / 'optimal_cur.log'

        # Debugging oriented logging output, including module and function name. Too verbose for standard usage.
        #self.logging_format = "%(asctime)s [%(levelname)s] %(module)s - %(funcName)s: %(message)s"
        self.logging_format = "%(asctime)s [%(levelname)s] %(message)s"

        self.logging_format_time = "%Y-%m-%d %H:%M"

        # 'force' replaces the handlers of a previous run in the same process, e.g. consecutive CLI calls in tests
        logging.basicConfig(
            level=DeveloperOptions.get_logging_level(),
            format=self.logging_format,
            datefmt=self.logging_format_time,
            handlers=[
                logging.FileHandler(path_to_log, encoding="utf-8"),
                logging.StreamHandler()     # Pass 'sys.stdout' if we'd prefer not to print to std.err
            ],
            force=True
        )
        logging.info(f"OptimalCur {DeveloperOptions.version}")


    def decompose(self, settings: Settings, loop_wrapper: Optional[ProgressItemGeneratorCLI] = None) -> RunReport:
        """ Decomposes the input named in the settings and writes artifacts plus report.json to the output directory.

        Args:
            settings: decomposition config and input location.
            loop_wrapper: progress wrapper for the trial loop.
        Returns:
            The report that was written.
        """
        if settings.data.path_to_input is None:
            raise CurArgumentError("no input matrix given")

        config = settings.decomposition
        path_to_input = Path(settings.data.path_to_input)

        start = time.perf_counter()
        matrix = read_matrix(path_to_input)
        logging.info(f"Input '{path_to_input.name}': {matrix.shape[0]} x {matrix.shape[1]}")

        outcome = run_trials(matrix, config, loop_wrapper)
        wall_clock_seconds = time.perf_counter() - start

        write_decomposition(self.path_to_output, outcome.decomposition)
        report = build_run_report(str(path_to_input), config, outcome, wall_clock_seconds)
        path_to_report = write_run_report(self.path_to_output, report)

        logging.info(f"{config.variant.name} CUR ({config.fidelity.name} constants, seed {config.seed}): "
                     f"c = {outcome.evaluation.c}, r = {outcome.evaluation.r}, "
                     f"ratio = {format_ratio(outcome.evaluation.ratio, outcome.evaluation.exact)}")
        logging.info(f"Report written to {path_to_report}")

        return report


    def verify(self, path_to_input: Path, path_to_decomposition: Path, k: Optional[int] = None) -> EvaluationReport:
        """ Re-evaluates a decomposition written by decompose() against its input.

        k defaults to the rank recorded in the decomposition's report.json.
        """
        path_to_decomposition = Path(path_to_decomposition)
        stored_report: Optional[RunReport] = None

        if (path_to_decomposition / "report.json").exists():
            stored_report = read_run_report(path_to_decomposition)

        if k is None:
            if stored_report is None:
                raise CurArgumentError(f"no report.json in '{path_to_decomposition}', the rank must be given")
            k = stored_report.diagnostics.rank

        decomposition = read_decomposition(path_to_decomposition, k)
        evaluation = evaluate(read_matrix(Path(path_to_input)), decomposition)

        if stored_report is not None and stored_report.evaluation.ratio is not None and evaluation.ratio is not None:
            difference = abs(stored_report.evaluation.ratio - evaluation.ratio)
            if difference > 1e-12 * max(1.0, abs(stored_report.evaluation.ratio)):
                logging.warning(f"Ratio {evaluation.ratio:.17g} differs from the reported "
                                f"{stored_report.evaluation.ratio:.17g}")

        return evaluation


    def generate_adversarial(self, n: int, k: int, alpha: float, path_to_file: Path) -> AdversarialInstance:
        instance = gen_adversarial(n, k, alpha)
        comment = f"adversarial n={n} k={k} alpha={alpha:.17g} ell={instance.ell} opt_sq={instance.opt_sq:.17g}"
        write_matrix(Path(path_to_file), instance.matrix, comment=comment)

        logging.info(f"Adversarial instance {instance.t} x {instance.t} written to {path_to_file}")
        return instance


    def bench(self, suite: BenchSuite, loop_wrapper: Optional[ProgressItemGeneratorCLI] = None) -> BenchSummary:
        logging.info(f"Bench suite with {len(suite.entries)} entries")
        return run_bench_suite(suite, self.path_to_output, loop_wrapper)

# Python
from __future__ import annotations

import time
import logging
from pathlib import Path
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, Callable, List, Optional, Union

# 3rd Party
import numpy as np

# 1st Party
from ..developer_options import DeveloperOptions
from ..components import FileOperations
from ..components import read_matrix
from ..components import get_percentage_and_amount_string
from ..cur import run_trials
from ..linalg.dataclasses_and_types import CurError
from ..cur_processing_config import BenchSuite, BenchEntry
from .instance_generators import make_instance
from .decomposition_artifacts import write_decomposition
from .reporting import build_run_report, write_run_report, within_guarantee, guarantee_ratio, dumps_indented

if TYPE_CHECKING:
    from ..cli import ProgressItemGeneratorCLI


FILENAME_BENCH_SUMMARY = "bench_summary.json"


@dataclass
class BenchEntryResult():
    name: str = ""
    variant: str = ""
    fidelity: str = ""
    seed: int = 0
    ratio: Optional[float] = None
    exact: bool = False
    guarantee_ratio: float = 0.0
    within_guarantee: bool = False
    wall_clock_seconds: float = 0.0
    error: Optional[str] = None


@dataclass
class BenchSummary():
    schema_version: str = ""
    entries: List[BenchEntryResult] = field(default_factory=list)
    within_guarantee: int = 0
    failed: int = 0


def _describe_input(entry: BenchEntry) -> str:
    if entry.input is not None:
        return str(entry.input)
    if entry.generator is not None:
        generator = entry.generator
        return f"generated:{generator.kind.name}:{generator.m}x{generator.n}:seed={generator.seed}"
    return "none"


def run_bench_entry(entry: BenchEntry, path_to_output: Path) -> BenchEntryResult:
    """ Runs one suite entry and writes its artifacts and report to 'path_to_output / entry.name'.

    Failures are recorded in the result rather than raised, so one bad entry does not stop the suite.
    """
    config = entry.decomposition
    result = BenchEntryResult(
        name=entry.name,
        variant=config.variant.name,
        fidelity=config.fidelity.name,
        seed=config.seed,
        guarantee_ratio=guarantee_ratio(config),
    )

    start = time.perf_counter()
    try:
        if entry.input is not None:
            matrix = read_matrix(entry.input)
        elif entry.generator is not None:
            matrix = make_instance(entry.generator)
        else:
            raise CurError(f"bench entry '{entry.name}' names neither an input nor a generator")

        outcome = run_trials(matrix, config)
    except (CurError, ValueError, ArithmeticError, np.linalg.LinAlgError) as error:
        logging.error(f"Bench entry '{entry.name}' failed: {error}")
        result.error = f"{type(error).__name__}: {error}"
        result.wall_clock_seconds = time.perf_counter() - start
        return result

    result.wall_clock_seconds = time.perf_counter() - start
    result.ratio = outcome.evaluation.ratio
    result.exact = outcome.evaluation.exact
    result.within_guarantee = within_guarantee(outcome.evaluation, config)

    path_to_entry = path_to_output / entry.name
    write_decomposition(path_to_entry, outcome.decomposition)
    write_run_report(path_to_entry, build_run_report(_describe_input(entry), config, outcome, result.wall_clock_seconds))

    return result


def run_bench_suite(suite: BenchSuite, path_to_output: Path,
                    loop_wrapper: Optional[Union[ProgressItemGeneratorCLI, Callable]] = None) -> BenchSummary:
    """ Runs every entry of 'suite' and writes bench_summary.json next to the per-entry outputs.

    Entries run on a thread pool when the suite asks for more than one worker and bench concurrency is enabled.
    Otherwise they run one after another through 'loop_wrapper'. Entries never share a random generator, so the
    results do not depend on the schedule.
    """
    path_to_output = FileOperations.ensure_directory(path_to_output)
    names = [entry.name for entry in suite.entries]
    if len(set(names)) != len(names):
        raise CurError("bench entry names must be unique, they name the output folders")

    if suite.workers > 1 and DeveloperOptions.is_bench_concurrency_enabled():
        logging.info(f"Running {len(suite.entries)} bench entries on {suite.workers} threads")
        with ThreadPoolExecutor(max_workers=suite.workers) as executor:
            results = list(executor.map(lambda entry: run_bench_entry(entry, path_to_output), suite.entries))
    else:
        loop_wrapper = loop_wrapper or (lambda elements, **kwargs: elements)
        results = [run_bench_entry(entry, path_to_output) for entry in loop_wrapper(suite.entries, desc="Bench")]

    summary = BenchSummary(
        schema_version=DeveloperOptions.json_schema_version,
        entries=results,
        within_guarantee=sum(result.within_guarantee for result in results),
        failed=sum(result.error is not None for result in results),
    )

    FileOperations.write_utf8_string(path_to_output / FILENAME_BENCH_SUMMARY, dumps_indented(summary))
    logging.info(f"Within guarantee: {get_percentage_and_amount_string(summary.within_guarantee, len(results))}")

    return summary

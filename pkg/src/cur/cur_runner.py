# Python
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Iterable, Optional

# 3rd Party
import numpy as np

# 1st Party
from ..linalg import matrix_core
from ..linalg.dataclasses_and_types import NumericalFailureError
from .dataclasses_and_types import CurVariant, CurDecomposition, EvaluationReport
from .cur_factory import create_cur_pipeline
from .evaluation import evaluate

if TYPE_CHECKING:
    from ..cur_processing_config import CurConfig
    from ..cli import ProgressItemGeneratorCLI


@dataclass
class TrialOutcome():
    decomposition: CurDecomposition
    evaluation: EvaluationReport
    trial_ratios: list[float] = field(default_factory=list)


def trial_generators(seed: int, trials: int) -> list[np.random.Generator]:
    """ One generator per trial. A single trial uses the seed directly, several trials use spawned child seeds so that
    every trial has an independent stream that only depends on (seed, trial index).
    """
    if trials == 1:
        return [np.random.default_rng(seed)]
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(trials)]


def _plain_loop(elements: Iterable, **kwargs):
    return elements


def run_trials(A: matrix_core.Matrix, config: CurConfig,
               loop_wrapper: Optional[ProgressItemGeneratorCLI | Callable] = None) -> TrialOutcome:
    """ Decomposes A 'config.trials' times and keeps the trial with the best evaluate() ratio.

    The deterministic variant always runs once. A trial that fails numerically is logged and skipped.

    Args:
        A: input matrix.
        config: decomposition settings, including seed and trial count.
        loop_wrapper: progress wrapper around the trial loop, e.g. ProgressItemGeneratorCLI.

    Raises:
        NumericalFailureError: every trial failed.
    """
    A = matrix_core.as_operand(A)
    loop_wrapper = loop_wrapper or _plain_loop
    pipeline = create_cur_pipeline(config)

    trials = 1 if config.variant == CurVariant.Deterministic else config.trials
    if trials != config.trials:
        logging.info("The deterministic variant ignores 'trials', running once")

    best: Optional[TrialOutcome] = None
    ratios: list[float] = []
    last_error: Optional[NumericalFailureError] = None

    generators = trial_generators(config.seed, trials)
    for trial in loop_wrapper(range(trials), desc=f"{config.variant.name} CUR trials"):
        try:
            decomposition = pipeline.decompose(A, generators[trial], trial=trial)
        except NumericalFailureError as error:
            logging.warning(f"Trial {trial} failed: {error}")
            last_error = error
            continue

        report = evaluate(A, decomposition)
        ratios.append(report.ratio_or_zero())

        if best is None or report.ratio_or_zero() < best.evaluation.ratio_or_zero():
            best = TrialOutcome(decomposition=decomposition, evaluation=report)

    if best is None:
        raise NumericalFailureError(f"all {trials} trials failed, last error: {last_error}")

    best.trial_ratios = ratios
    logging.info(f"Best of {len(ratios)} trial(s): trial {best.decomposition.diagnostics.trial}")
    return best

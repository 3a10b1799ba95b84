# Python
import json
from pathlib import Path
from datetime import datetime

# 3rd Party
import jsons as jsonserializer

# 1st Party
from ..developer_options import DeveloperOptions
from ..components import FileOperations
from ..cur import TrialOutcome
from ..cur.dataclasses_and_types import CurVariant, RunReport, EvaluationReport
from ..cur_processing_config import CurConfig


FILENAME_REPORT = "report.json"

# ||A - CUR||^2 <= (1 + factor * eps) ||A - A_k||^2 is what each variant promises. The input-sparsity factor is the
# acceptance envelope around its (1 + eps)(1 + 60 eps) bound.
GUARANTEE_FACTORS = {
    CurVariant.Linear: 20.0,
    CurVariant.Sparse: 62.0,
    CurVariant.Deterministic: 8.0,
}


def guarantee_ratio(config: CurConfig) -> float:
    return 1.0 + GUARANTEE_FACTORS[config.variant] * config.epsilon


def within_guarantee(evaluation: EvaluationReport, config: CurConfig) -> bool:
    if evaluation.ratio is None:
        return evaluation.exact
    return evaluation.ratio <= guarantee_ratio(config)


def config_echo(config: CurConfig) -> dict:
    return jsonserializer.dump(config)


def build_run_report(input_descriptor: str, config: CurConfig, outcome: TrialOutcome,
                     wall_clock_seconds: float) -> RunReport:
    return RunReport(
        schema_version=DeveloperOptions.json_schema_version,
        input_descriptor=input_descriptor,
        config=config_echo(config),
        evaluation=outcome.evaluation,
        diagnostics=outcome.decomposition.diagnostics,
        trial_ratios=outcome.trial_ratios,
        wall_clock_seconds=wall_clock_seconds,
        created=datetime.now().isoformat(timespec="seconds"),
    )


def dumps_indented(data) -> str:
    return json.dumps(jsonserializer.dump(data), indent=4)


def write_run_report(path_to_dir: Path, report: RunReport) -> Path:
    path_to_report = FileOperations.ensure_directory(path_to_dir) / FILENAME_REPORT
    FileOperations.write_utf8_string(path_to_report, dumps_indented(report))
    return path_to_report


def read_run_report(path_to_dir: Path) -> RunReport:
    return jsonserializer.loads(FileOperations.read_utf8_string(Path(path_to_dir) / FILENAME_REPORT), RunReport)

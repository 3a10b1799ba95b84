# Python
from dataclasses import dataclass, field
from typing import List

# 3rd Party

# 1st Party
from .cur_decomposition import CurDiagnostics
from .evaluation_report import EvaluationReport


@dataclass
class RunReport():
    schema_version: str = ""
    input_descriptor: str = ""
    config: dict = field(default_factory=dict)
    evaluation: EvaluationReport = field(default_factory=EvaluationReport)
    diagnostics: CurDiagnostics = field(default_factory=CurDiagnostics)
    trial_ratios: List[float] = field(default_factory=list)
    wall_clock_seconds: float = 0.0
    created: str = ""

# Python
from typing import Optional

# 3rd Party

# 1st Party


def percentage(numerator, denominator) -> float:
    return 100 * float(numerator) / float(denominator) if denominator else 0.0


def get_percentage_and_amount_string(portion: int, total: int) -> str:
    return f"{percentage(portion, total):>6.2f}% ({portion:>4} / {total:>4})"


def format_ratio(ratio: Optional[float], exact: bool) -> str:
    """ err^2 / opt^2 for log lines. A missing ratio means opt^2 is zero. """
    if ratio is not None:
        return f"{ratio:.6g}"
    return "exact" if exact else "undefined (opt^2 = 0)"

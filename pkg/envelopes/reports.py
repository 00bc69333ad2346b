"""
Run reports: the JSON document written by --json and the quotient
summaries shared by the CLI commands.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from errors import UnitIdealError
from groebner import CompletionConfig, CompletionResult, CompletionStatus
from quotient import automaton_for, dims_for_result, is_finite, normal_words

logger = logging.getLogger("envelopes.reports")

SCHEMA_VERSION = 1


@dataclass
class RunReport:
    """
    Everything one CLI invocation computed. `timings` is the only part
    that may differ between identical runs.
    """

    command: List[str]
    config: Optional[CompletionConfig] = None
    result: Optional[CompletionResult] = None
    quotient: Optional[Dict[str, Any]] = None
    extra: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)

    def to_dict(self, include_timings: bool = True) -> dict:
        data: Dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "command": list(self.command),
            "config": self.config.to_dict() if self.config is not None else None,
            "result": self.result.to_dict() if self.result is not None else None,
            "quotient": self.quotient,
        }
        data.update(self.extra)
        if include_timings:
            data["timings"] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return data

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), sort_keys=True, indent=2, ensure_ascii=False)

    def write_json(self, path: str):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json())
            f.write("\n")
        logger.info(f"Report written to {path}")


def quotient_summary(result: CompletionResult, window: int) -> Dict[str, Any]:
    """
    Finite quotient: dimension and normal words. Infinite: graded
    dimensions up to `window`, with the degree up to which they are exact.
    """
    alphabet = result.alphabet
    if result.status is CompletionStatus.UNIT_IDEAL:
        return {"finite": True, "dimension": 0, "normal_words": []}
    try:
        automaton = automaton_for(result.basis, alphabet)
    except UnitIdealError:
        return {"finite": True, "dimension": 0, "normal_words": []}
    if is_finite(automaton):
        words = normal_words(automaton)
        summary: Dict[str, Any] = {
            "finite": True,
            "dimension": len(words),
            "normal_words": [alphabet.format(w) for w in words],
        }
        if not result.is_complete:
            # leading monomials of a partial basis only bound the quotient from above
            summary["exact"] = False
        return summary
    dims = dims_for_result(result, window)
    return {"finite": False, "dims": dims.dims, "guaranteed_upto": dims.guaranteed_upto}


def format_normal_words(words: List[str]) -> str:
    return ", ".join(f"u{i} = {w}" for i, w in enumerate(words, start=1))


def format_quotient(summary: Dict[str, Any]) -> str:
    if summary["finite"]:
        lines = [f"quotient: finite, dimension {summary['dimension']}"]
        if summary.get("exact") is False:
            lines[0] += " (upper bound: basis not complete)"
        if summary["normal_words"]:
            lines.append(format_normal_words(summary["normal_words"]))
        return "\n".join(lines)
    line = "quotient: infinite, graded dims " + ",".join(str(d) for d in summary["dims"])
    if summary.get("guaranteed_upto") is not None:
        line += f" (exact up to degree {summary['guaranteed_upto']})"
    return line

# -*- encoding: utf-8 -*-

"""Reports produced by the command-line interface

Every subcommand fills a :class:`Report`, which can be written either as
JSON (stable across runs on the same input) or as line-oriented text.
"""

from dataclasses import dataclass, field
import json
from typing import Any, Dict, List

__all__ = ["Report", "CITATIONS"]

#: Short explanation of each source of guaranteed rotation elements
CITATIONS = {
    "fixed-point-neither": "neither endpoint path begins with the edge: "
    "the closed edge contains a point with trivial rotation element",
    "fixed-point-both": "both endpoint paths begin with the edge: "
    "the closed edge contains a point with trivial rotation element",
    "belongs-one": "the edge belongs to the rotation word of one endpoint: "
    "elements (w^p γ)^(1/q) with 0 < p/q < 1/m",
    "belongs-both-neither-begin": "the edge belongs to both rotation words "
    "and neither path begins with it: both one-sided families",
    "belongs-both-both-begin": "the edge belongs to both rotation words and "
    "both paths begin with it: elements w1^r and w2^s",
    "common-root-interval": "the rotation words are powers of a common root "
    "the edge belongs to: every rational power between the two bounds",
    "belongs-both-not-powers": "the edge belongs to two rotation words that "
    "are not powers of a common word: one-sided families at large powers",
    "s-closure": "two interior points force every element of their S-set",
    "one-orbit": "a single orbit with distinct endpoint words forces "
    "infinitely many distinct rotation elements",
    "linear-model": "points are found for the linear model and hence exist "
    "for every map with the same tracks",
}


@dataclass
class Report:
    """The outcome of a subcommand

    Attributes:
        command (str): name of the subcommand
        digest (str): SHA-256 of the input spec file
        results (dict): machine-readable payload
        citations (list): keys of :data:`CITATIONS` supporting the results
        lines (list): human-readable form of the payload
    """

    command: str
    digest: str
    results: Dict[str, Any] = field(default_factory=dict)
    citations: List[str] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)

    def cite(self, key: str):
        if key in CITATIONS and key not in self.citations:
            self.citations.append(key)

    def to_dict(self):
        return {
            "command": self.command,
            "digest": self.digest,
            "results": self.results,
            "citations": [{"key": key, "text": CITATIONS[key]} for key in self.citations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=4, sort_keys=True)

    def to_text(self) -> str:
        result = list(self.lines)
        if self.citations:
            result.append("")
            result.extend(f"[{key}] {CITATIONS[key]}" for key in self.citations)

        return "\n".join(result)

"""Shared result types for the budgeted searches."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"

    @property
    def exit_code(self) -> int:
        return {Verdict.YES: 0, Verdict.NO: 1, Verdict.INDETERMINATE: 2}[self]


@dataclass
class SearchOutcome:
    verdict: Verdict
    witness: Any = None
    stats: dict = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def no(self) -> bool:
        return self.verdict is Verdict.NO

    @property
    def indeterminate(self) -> bool:
        return self.verdict is Verdict.INDETERMINATE


class BudgetExhausted(Exception):
    pass


class Budget:
    """Counts expanded search nodes and raises once the limit is passed."""

    def __init__(self, limit: int | None):
        self.limit = limit
        self.nodes = 0
        self.memo_hits = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExhausted

    def stats(self) -> dict:
        return {"nodes": self.nodes, "memo_hits": self.memo_hits}

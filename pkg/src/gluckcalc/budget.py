"""Search budgets and the UNKNOWN verdict shared by both search engines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SearchBudget:
    """Deterministic search limits.

    ``max_nodes`` counts successor states generated (each one is reduced,
    canonicalized and looked up in the transposition table), so the same
    budget yields the same verdict regardless of worker count or machine.
    """

    max_nodes: int = 10**6
    max_total_length: int = 64
    max_conjugator_length: int = 4

    def __post_init__(self):
        for name in ("max_nodes", "max_total_length", "max_conjugator_length"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def to_dict(self) -> dict:
        return {
            "max_nodes": self.max_nodes,
            "max_total_length": self.max_total_length,
            "max_conjugator_length": self.max_conjugator_length,
        }


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class Unknown:
    """Budget exhaustion.  Never a mathematical negative."""

    reason: str
    nodes: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"verdict": "UNKNOWN", "reason": self.reason, "nodes": self.nodes, **self.details}

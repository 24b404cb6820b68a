"""Uniform result type for verification operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Verdict:
    """Outcome of one verification: ok flag, JSON-able details, and an
    optional witness (a counterexample or distinguished element)."""

    ok: bool
    details: dict = field(default_factory=dict)
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok

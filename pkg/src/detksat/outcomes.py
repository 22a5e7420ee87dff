"""Shared result type for the branching solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chains import Instance


@dataclass(frozen=True)
class Outcome:
    kind: str  # "sat" | "unsat" | "instance"
    assignment: Optional[dict[int, int]] = None
    instance: Optional[Instance] = None

    @staticmethod
    def sat(assignment: dict[int, int]) -> "Outcome":
        return Outcome("sat", assignment=assignment)

    @staticmethod
    def unsat() -> "Outcome":
        return Outcome("unsat")

    @staticmethod
    def of_instance(inst: Instance) -> "Outcome":
        return Outcome("instance", instance=inst)

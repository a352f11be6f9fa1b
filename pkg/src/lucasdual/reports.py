"""Structured verification outcomes shared by the congruence verifiers,
the cyclotomic rational-congruence check, and the doubling check.

Serialized line format (tab-separated, one report per line):

    statement_id<TAB>instance<TAB>status<TAB>witnesses

instance is a space-joined list of key=value pairs in declaration order.
witnesses is ';'-joined triples value|modulus|expected, or '-' when empty.
Rationals render as num/den. The format is byte-stable for golden tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class Statement(Enum):
    THM_MU = "THM_MU"
    THM_MV = "THM_MV"
    COR_MODN = "COR_MODN"
    COR_LIFT = "COR_LIFT"
    COR_MULT = "COR_MULT"
    COR_FIB = "COR_FIB"
    RATCON = "RATCON"
    DOUBLING = "DOUBLING"

    def __str__(self) -> str:
        return self.value


class Status(Enum):
    VERIFIED = "VERIFIED"
    VIOLATED = "VIOLATED"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    UNCONSTRAINED = "UNCONSTRAINED"
    INCOMPLETE = "INCOMPLETE"

    def __str__(self) -> str:
        return self.value


def _fmt(x: object) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)


@dataclass(frozen=True)
class Witness:
    """One checked congruence: the computed value, the modulus it was checked
    against, and the expected residue. Valuation-style checks reuse the fields
    with textual value/expected entries."""

    value: object
    modulus: object
    expected: object

    def render(self) -> str:
        return f"{_fmt(self.value)}|{_fmt(self.modulus)}|{_fmt(self.expected)}"


@dataclass(frozen=True)
class VerificationReport:
    statement: Statement
    instance: tuple[tuple[str, object], ...]
    status: Status
    witnesses: tuple[Witness, ...] = ()
    branch: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.status is Status.VIOLATED and not self.witnesses:
            raise ValueError("VIOLATED reports must carry at least one witness")

    def instance_str(self) -> str:
        return " ".join(f"{k}={_fmt(v)}" for k, v in self.instance)

    def to_line(self) -> str:
        wit = ";".join(w.render() for w in self.witnesses) or "-"
        return f"{self.statement}\t{self.instance_str()}\t{self.status}\t{wit}"


def merge_status(parts: list[Status]) -> Status:
    """Combined status for a report built from several sub-checks: any
    violation dominates, then incompleteness; all-excluded instances stay
    NOT_APPLICABLE; otherwise a single constrained check decides."""
    if Status.VIOLATED in parts:
        return Status.VIOLATED
    if Status.INCOMPLETE in parts:
        return Status.INCOMPLETE
    if Status.VERIFIED in parts:
        return Status.VERIFIED
    if Status.UNCONSTRAINED in parts:
        return Status.UNCONSTRAINED
    return Status.NOT_APPLICABLE

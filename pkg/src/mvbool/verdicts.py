"""Verdicts produced by instance-level statement checks."""
from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
VACUOUS = "VACUOUS"
FAIL = "FAIL"


@dataclass
class Verdict:
    """Outcome of checking one statement on one instance.

    ``VACUOUS`` means the statement's premise never occurs on the instance.
    ``hypotheses_hold`` is False when the instance violates a standing
    assumption of the statement; a FAIL is only a real counterexample when
    the hypotheses hold.
    """

    statement: str
    status: str
    hypotheses_hold: bool = True
    witnesses: dict = field(default_factory=dict)
    counterexample: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    @property
    def falsified(self) -> bool:
        return self.status == FAIL and self.hypotheses_hold

    def records(self) -> list:
        """``key=value`` lines for machine consumption."""
        lines = [
            f"statement={self.statement}",
            f"verdict={self.status}",
            f"hypotheses={'hold' if self.hypotheses_hold else 'violated'}",
        ]
        for k, v in self.witnesses.items():
            lines.append(f"{k}={_fmt(v)}")
        if self.counterexample:
            for k, v in self.counterexample.items():
                lines.append(f"counterexample.{k}={_fmt(v)}")
        for note in self.notes:
            lines.append(f"note={note}")
        return lines


class State(tuple):
    """A state tuple that remembers how its space prints it."""

    text: str

    def __new__(cls, space, x):
        obj = super().__new__(cls, x)
        obj.text = space.format_state(x)
        return obj


def _fmt(v) -> str:
    if isinstance(v, State):
        return v.text
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple, set, frozenset)) and not _is_state(v):
        return " ".join(_fmt(x) for x in v)
    if _is_state(v):
        return "".join(str(a) for a in v) if all(a in (0, 1) for a in v) else (
            "(" + ",".join(str(a) for a in v) + ")"
        )
    return str(v)


def _is_state(v) -> bool:
    return isinstance(v, tuple) and len(v) > 0 and all(isinstance(a, int) for a in v)


def verdict(statement, ok, **kwargs) -> Verdict:
    return Verdict(statement, PASS if ok else FAIL, **kwargs)

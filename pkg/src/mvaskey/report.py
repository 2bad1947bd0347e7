from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .params import fmt_fraction


def jsonable(x):
    if isinstance(x, Fraction):
        return fmt_fraction(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        if math.isfinite(x):
            return {"decimal": repr(x), "hex": x.hex()}
        return {"decimal": repr(x), "hex": None}
    if isinstance(x, complex):
        return {"real": jsonable(x.real), "imag": jsonable(x.imag)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item"):
        return jsonable(x.item())
    raise TypeError(f"cannot serialise {type(x).__name__}")


@dataclass
class VerificationReport:
    """One checked identity instance.

    ``status`` is ``"pass"``, ``"fail"`` or ``"warning"``; a warning is a
    failed check whose failure is not counted against the run.
    """

    identity: str
    params: dict
    indices: dict
    passed: bool
    exact: bool = True
    witnesses: list[dict] = field(default_factory=list)
    discrepancy: object = Fraction(0)
    status: str = ""
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "status": self.status,
            "passed": self.passed,
            "exact": self.exact,
            "indices": jsonable(self.indices),
            "discrepancy": jsonable(self.discrepancy),
            "witnesses": jsonable(self.witnesses),
            "notes": list(self.notes),
            "params": self.params,
        }

# src/classify/reports.py
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict

from ..algebra.polynomial import GermMap, Poly, PolyVec

PASS = "pass"
FAIL = "fail"


def jsonable(value: Any) -> Any:
    """Polynomials become canonical text; containers are converted recursively."""
    if isinstance(value, (Poly, PolyVec, GermMap)):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass
class VerificationReport:
    claim_id: str
    status: str
    computed: Dict[str, Any] = field(default_factory=dict)
    expected: Dict[str, Any] = field(default_factory=dict)
    note: str = ""

    @classmethod
    def compare(cls, claim_id: str, computed: Dict[str, Any], expected: Dict[str, Any],
                note: str = "") -> "VerificationReport":
        """pass iff every expected key is computed with an identical value."""
        matches = all(computed.get(key) == value for key, value in expected.items())
        return cls(claim_id, PASS if matches else FAIL, computed, expected, note)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {
            'claim_id': self.claim_id,
            'status': self.status,
            'computed': jsonable(self.computed),
            'expected': jsonable(self.expected),
            'note': self.note,
        }

    def summary_line(self) -> str:
        icon = "✅" if self.passed else "❌"
        return f"{icon} {self.claim_id}: {self.status}"

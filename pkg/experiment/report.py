"""Verification reports

JSON reports of one verification run. The body holds no timestamps, so identical inputs give identical reports; the
checksum is the SHA-256 of the canonical body.
"""

import hashlib
import json
from dataclasses import dataclass, field, asdict
from typing import *

from algebra import format_poly
from local import expansion_checksum
from utils import write_json
from utils.config import REPORT_SCHEMA_VERSION

NOT_A_ROOT_OF_UNITY = 'not a root of unity'
TORSION_NOTE = 'E(F)_tor = 0 is assumed context for I_psi in q_E^Z and is not checked'


@dataclass
class VerificationReport:
    curve: str
    q: int
    level: str
    p: str
    m_p: int
    m_inf: int
    winding: int
    eigenvalues: Dict[str, int]
    q_tilde: Dict[str, Any]
    q_c: Dict[str, Any]
    i_psi: Dict[str, Any]
    ball_level: int
    precision: int
    certified_precision: int
    xi: str
    zeta: str
    checks: Dict[str, bool]
    details: Dict[str, str] = field(default_factory=dict)
    notes: List[str] = field(default_factory=lambda: [TORSION_NOTE])

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def body(self) -> Dict[str, Any]:
        body = asdict(self)
        body['passed'] = self.passed
        body['schema_version'] = REPORT_SCHEMA_VERSION
        body['j_expansion_checksum'] = expansion_checksum(self.precision + 3)
        return body

    def checksum(self) -> str:
        text = json.dumps(self.body(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()

    def to_json(self) -> Dict[str, Any]:
        body = self.body()
        body['checksum'] = self.checksum()
        return body

    def write(self, path: str):
        write_json(path, self.to_json())


def format_residue(r) -> str:
    return NOT_A_ROOT_OF_UNITY if r is None else format_poly(r)

"""Classification of candidate graphs as mixed Moore / radial Moore graphs."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from .errors import UnreachablePair
from .graph import MixedGraph, degree_profile, distances, eccentricity_profile, status_vector
from .moore import moore_profile

MOORE, RADIAL_MOORE, NEITHER = "MOORE", "RADIAL_MOORE", "NEITHER"


@dataclass(frozen=True)
class VerificationReport:
    order_ok: bool
    regular_ok: bool
    radius: int | None
    diameter: int | None
    central_count: int
    status: int | None
    norm1: int | None
    classification: str
    failures: tuple = field(default=())
    eccentricities: tuple = field(default=(), repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["failures"] = list(self.failures)
        d.pop("eccentricities")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _finite(v):
    return None if v == math.inf else v


def verify(g: MixedGraph, r: int, z: int, k: int = 2) -> VerificationReport:
    """Check order, total regularity, radius and diameter; never raises on failure."""
    prof = moore_profile(r, z, k)
    failures = []
    order_ok = g.n == prof.M
    if not order_ok:
        failures.append(f"order {g.n} != M({r},{z},{k}) = {prof.M}")
    regular_ok = degree_profile(g).is_totally_regular(r, z)
    if not regular_ok:
        failures.append(f"not totally ({r},{z})-regular")
    dm = distances(g)
    ecc = eccentricity_profile(g, dm)
    radius, diameter = _finite(ecc.radius), _finite(ecc.diameter)
    central_count = sum(1 for e in ecc.eccentricities if e == k)
    try:
        sv = status_vector(g, dm)
        status = sv.total
        norm1 = sum(abs(s - prof.s_per_vertex) for s in sv.per_vertex) if order_ok else None
    except UnreachablePair:
        status = norm1 = None
        failures.append("some vertex pair is unreachable")

    if order_ok and regular_ok and diameter == k:
        cls = MOORE
    elif order_ok and regular_ok and radius == k and diameter == k + 1:
        cls = RADIAL_MOORE
    else:
        cls = NEITHER
        if diameter is not None and diameter > k + 1:
            failures.append(f"diameter {diameter} > {k + 1}")
        if radius is not None and radius != k:
            failures.append(f"radius {radius} != {k}")
    ecc_t = tuple(_finite(e) for e in ecc.eccentricities)
    return VerificationReport(order_ok, regular_ok, radius, diameter, central_count,
                              status, norm1, cls, tuple(failures), ecc_t)

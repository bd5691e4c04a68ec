"""Datasets in the (signed P12^2, mean P^2) plane.

A state maps to ``x = p12_sq_signed`` (read as ``-Pm^2`` when negative) and
``y = pbar_sq``. Pure states lie on the segment from A = (0, 1) to
B = (1, 0); every state lies inside the polygon A, B, C, D, E.
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import qmat
from .errors import PreconditionError, SpecError
from .measures import two_photon_measures
from .rng import generator
from .states import (
    H,
    V,
    TwoPhotonState,
    bell,
    convex_mix,
    product_pure,
    sample_density,
    two_product_mixture,
    werner,
)
from .stokes import stokes_from_density2

BOUND_TOL = 1e-9
SEGMENTS = ("AE", "DE", "AC_classical")


@dataclass(frozen=True)
class RegionPoint:
    x: float
    y: float
    purity: float
    tag: str
    param: Optional[Union[float, int]] = None

    def __post_init__(self):
        if not (-0.5 - BOUND_TOL <= self.x <= 1.0 + BOUND_TOL):
            raise ValueError(f"x = {self.x!r} outside [-0.5, 1]")
        if not (-BOUND_TOL <= self.y <= 1.0 + BOUND_TOL):
            raise ValueError(f"y = {self.y!r} outside [0, 1]")
        if self.x + self.y > 1.0 + BOUND_TOL:
            raise ValueError(f"x + y = {self.x + self.y!r} exceeds 1")


@dataclass(frozen=True)
class RegionDataset:
    points: tuple
    family: str

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("a dataset needs at least one point")

    def xy(self):
        return np.array([(p.x, p.y) for p in self.points])


def locate(state, tag="", param=None):
    """Plane coordinates of a two-photon state."""
    if not isinstance(state, TwoPhotonState):
        state = TwoPhotonState(state)
    m = two_photon_measures(stokes_from_density2(state))
    return RegionPoint(m.p12_sq_signed, m.pbar_sq, state.purity, tag, param)


def classical_mixture(lam):
    """lam |HH><HH| + (1 - lam) |VV><VV|."""
    return two_product_mixture(H, H, V, V, lam)


def polygon_vertices():
    """Points A to E, each computed from a state that realizes it."""
    half_identity = qmat.I2 / 2.0
    constructions = {
        "A": product_pure(H, H),
        "B": bell("phi_plus"),
        "C": classical_mixture(0.5),
        "D": TwoPhotonState(qmat.I4 / 4.0),
        "E": TwoPhotonState(np.kron(H.projector(), half_identity)),
    }
    return [locate(state, tag) for tag, state in constructions.items()]


VERTEX_COORDS = {"A": (0.0, 1.0), "B": (1.0, 0.0), "C": (0.0, 0.0), "D": (-0.5, 0.0), "E": (-0.5, 0.5)}
# convex hull, counter-clockwise; C lies on the edge DB
HULL = ("D", "B", "A", "E")


def hull_margin(x, y):
    """Smallest signed distance from (x, y) to the hull edges (positive inside)."""
    pts = [VERTEX_COORDS[k] for k in HULL]
    best = np.inf
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        ex, ey = x1 - x0, y1 - y0
        d = (ex * (y - y0) - ey * (x - x0)) / np.hypot(ex, ey)
        best = np.minimum(best, d)
    return best


def _steps(nsteps):
    if isinstance(nsteps, bool) or not isinstance(nsteps, (int, np.integer)) or nsteps < 2:
        raise SpecError(f"nsteps must be an integer >= 2, got {nsteps!r}")
    return int(nsteps)


def werner_sweep(psi, nsteps):
    """Werner mixtures of pure ``psi`` for lambda running from 1 down to 0."""
    nsteps = _steps(nsteps)
    if not isinstance(psi, TwoPhotonState):
        psi = TwoPhotonState(psi)
    if psi.purity < 1.0 - 1e-9:
        raise PreconditionError("Werner sweep needs a pure state")
    lams = np.linspace(1.0, 0.0, nsteps)
    return RegionDataset([locate(werner(psi, lam), "werner", float(lam)) for lam in lams], "werner")


def segment_sweep(kind, nsteps):
    """Boundary loci: ``"AE"``, ``"DE"`` or ``"AC_classical"``."""
    nsteps = _steps(nsteps)
    params = np.linspace(0.0, 1.0, nsteps)
    if kind == "AE":
        make = lambda t: two_product_mixture(H, H, H, V, t)  # noqa: E731
    elif kind == "DE":
        e_h = np.kron(H.projector(), qmat.I2 / 2.0)
        e_v = np.kron(V.projector(), qmat.I2 / 2.0)
        make = lambda t: convex_mix([(t, e_h), (1.0 - t, e_v)])  # noqa: E731
    elif kind == "AC_classical":
        make = classical_mixture
    else:
        raise SpecError(f"unknown segment {kind!r}; expected one of {SEGMENTS}")
    return RegionDataset([locate(make(float(t)), kind, float(t)) for t in params], kind)


def random_cloud(n, spec):
    """``n`` random states of ``spec.kind``; point ``k`` uses stream (seed, k)."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise SpecError(f"n must be a positive integer, got {n!r}")
    points = [
        locate(TwoPhotonState(sample_density(spec, generator(spec.seed, k))), spec.kind, k)
        for k in range(int(n))
    ]
    return RegionDataset(points, spec.kind)

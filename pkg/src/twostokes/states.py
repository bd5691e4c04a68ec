"""Constructors for the two-photon polarization states used throughout.

Product pure states, the four Bell states, Werner mixtures, mixtures of two
product states, general convex mixtures and seeded random ensembles.
"""

from dataclasses import InitVar, dataclass, field
import math

import numpy as np

from . import qmat
from .errors import (
    DegenerateStateError,
    DensityError,
    NormalizationError,
    PreconditionError,
    RangeError,
    SpecError,
)
from .rng import check_seed, generator

PURE_THRESHOLD = 1.0 - 1e-9


@dataclass(frozen=True)
class JonesVector:
    """Pure one-photon polarization state h|H> + v|V>, normalized on creation."""

    h: complex
    v: complex

    def __post_init__(self):
        h, v = complex(self.h), complex(self.v)
        norm = math.sqrt(abs(h) ** 2 + abs(v) ** 2)
        if not norm > 0.0 or not math.isfinite(norm):
            raise DegenerateStateError(f"Jones vector ({h}, {v}) cannot be normalized")
        object.__setattr__(self, "h", h / norm)
        object.__setattr__(self, "v", v / norm)

    @property
    def ket(self):
        return np.array([self.h, self.v], dtype=np.complex128)

    def projector(self):
        return qmat.ket_to_density(self.ket)

    def orthogonal(self):
        """The orthogonal polarization, -v*|H> + h*|V>."""
        return JonesVector(-self.v.conjugate(), self.h.conjugate())


H = JonesVector(1, 0)
V = JonesVector(0, 1)
D45 = JonesVector(1, 1)
A135 = JonesVector(1, -1)
R = JonesVector(1, -1j)
L = JonesVector(1, 1j)


@dataclass(frozen=True, eq=False)
class TwoPhotonState:
    """A 4x4 two-photon polarization density matrix.

    The matrix is validated on construction. With ``strict=False`` an invalid
    matrix is kept and the failing report is available on ``report``;
    ``normalize=True`` divides by the trace before validating.
    """

    rho: np.ndarray
    strict: InitVar[bool] = True
    normalize: InitVar[bool] = False
    report: qmat.DensityReport = field(init=False, repr=False)

    def __post_init__(self, strict, normalize):
        rho = np.array(qmat.as_matrix(self.rho, dims=(4,)))
        if normalize:
            tr = np.trace(rho)
            if abs(tr) == 0.0:
                raise NormalizationError("cannot normalize a matrix with zero trace")
            rho = rho / tr
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        report = qmat.validate_density(rho)
        object.__setattr__(self, "report", report)
        if strict and not report.is_valid:
            raise DensityError(
                "not a valid density matrix: " + describe_failures(report), report
            )

    @property
    def physical(self):
        return self.report.is_valid

    @property
    def purity(self):
        return qmat.purity(self.rho)

    def reduced(self, photon):
        return qmat.partial_trace(self.rho, photon)


def describe_failures(report):
    return ", ".join(f"{name}={getattr(report, name):.3g}" for name in report.failed)


def _as_state(obj):
    return obj if isinstance(obj, TwoPhotonState) else TwoPhotonState(obj)


def _check_weight(lam, name="lambda"):
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise RangeError(f"{name} must lie in [0, 1], got {lam}")
    return lam


def product_density(a, b):
    return qmat.tensor_product(a.projector(), b.projector())


def product_pure(a, b):
    """Separable pure state |a> (x) |b>."""
    return TwoPhotonState(product_density(a, b))


_BELL = {
    "phi_plus": (1, 0, 0, 1),
    "phi_minus": (1, 0, 0, -1),
    "psi_plus": (0, 1, 1, 0),
    "psi_minus": (0, 1, -1, 0),
}
_BELL_ALIASES = {"phi+": "phi_plus", "phi-": "phi_minus", "psi+": "psi_plus", "psi-": "psi_minus"}


def bell(kind):
    """One of the four maximally entangled Bell states, e.g. ``"phi_plus"``."""
    key = _BELL_ALIASES.get(kind, kind)
    if key not in _BELL:
        raise SpecError(f"unknown Bell state {kind!r}")
    psi = np.array(_BELL[key], dtype=np.complex128) / math.sqrt(2.0)
    return TwoPhotonState(qmat.ket_to_density(psi))


def werner(psi, lam, strict=True):
    """lam * psi + (1 - lam) * I/4 for a pure two-photon state ``psi``."""
    psi = _as_state(psi)
    lam = _check_weight(lam)
    if strict and psi.purity < PURE_THRESHOLD:
        raise PreconditionError(f"Werner mixture needs a pure state, purity is {psi.purity:.12g}")
    return TwoPhotonState(lam * psi.rho + (1.0 - lam) * qmat.I4 / 4.0)


def two_product_mixture(a, b, c, d, lam):
    """lam |ab><ab| + (1 - lam) |cd><cd| for one-photon pure states a, b, c, d."""
    lam = _check_weight(lam)
    return TwoPhotonState(lam * product_density(a, b) + (1.0 - lam) * product_density(c, d))


def convex_mix(terms):
    """Weighted sum of density matrices; ``terms`` is a list of (weight, state)."""
    terms = list(terms)
    if not terms:
        raise NormalizationError("convex mixture needs at least one term")
    weights = [float(w) for w, _ in terms]
    if any(w < 0.0 for w in weights):
        raise NormalizationError(f"mixture weights must be non-negative, got {weights}")
    if abs(math.fsum(weights) - 1.0) > 1e-12:
        raise NormalizationError(f"mixture weights must sum to 1, got {math.fsum(weights)!r}")
    rho = sum(w * _as_state(s).rho for w, (_, s) in zip(weights, terms))
    return TwoPhotonState(rho)


RANDOM_KINDS = ("haar-pure", "ginibre-mixed", "product-mixture")


@dataclass(frozen=True)
class RandomSpec:
    kind: str
    rank: int = 4
    terms: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.kind not in RANDOM_KINDS:
            raise SpecError(f"unknown ensemble {self.kind!r}; expected one of {RANDOM_KINDS}")
        if isinstance(self.rank, bool) or not isinstance(self.rank, (int, np.integer)) or not 1 <= self.rank <= 4:
            raise SpecError(f"rank must be an integer in [1, 4], got {self.rank!r}")
        if isinstance(self.terms, bool) or not isinstance(self.terms, (int, np.integer)) or self.terms < 1:
            raise SpecError(f"terms must be a positive integer, got {self.terms!r}")
        check_seed(self.seed)


def _complex_normal(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _random_qubit(rng):
    z = _complex_normal(rng, 2)
    return z / np.linalg.norm(z)


def sample_density(spec, rng):
    """Draw one density matrix of ensemble ``spec.kind`` from ``rng``."""
    if spec.kind == "haar-pure":
        z = _complex_normal(rng, 4)
        rho = qmat.ket_to_density(z / np.linalg.norm(z))
    elif spec.kind == "ginibre-mixed":
        g = _complex_normal(rng, (4, spec.rank))
        w = g @ g.conj().T
        rho = w / np.trace(w).real
    else:
        weights = rng.dirichlet(np.ones(spec.terms))
        rho = np.zeros((4, 4), dtype=np.complex128)
        for w in weights:
            a = qmat.ket_to_density(_random_qubit(rng))
            b = qmat.ket_to_density(_random_qubit(rng))
            rho += w * np.kron(a, b)
    return 0.5 * (rho + rho.conj().T)


def random_state(spec):
    """Reproducible random state: equal RandomSpec values always yield the same matrix."""
    return TwoPhotonState(sample_density(spec, generator(spec.seed)))

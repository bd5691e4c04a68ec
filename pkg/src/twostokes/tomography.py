"""Coincidence tomography with polarization analyzers.

Each setting places one analyzer in front of each detector and records the
coincidence probability Tr(rho (P1 (x) P2)), which is a fixed linear
combination of the 16 two-photon Stokes parameters. Sixteen independent
settings determine the tensor by linear inversion.
"""

from dataclasses import dataclass
import functools
from typing import Optional

import numpy as np

from . import qmat
from .errors import NormalizationError, RecordError, SingularSchemeError, SpecError
from .rng import check_seed, generator
from .states import A135, D45, H, L, R, V, JonesVector, TwoPhotonState
from .stokes import PAULI2, IMAG_TOL, density_from_stokes2

LABELS = ("H", "V", "D45", "A135", "R", "L")
_JONES = {"H": H, "V": V, "D45": D45, "A135": A135, "R": R, "L": L}

# relative pivot size below which the design matrix is treated as singular
PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class Analyzer:
    label: str
    jones: JonesVector

    @property
    def projector(self):
        return self.jones.projector()


def canonical_analyzer(label, jones=None):
    """Analyzer for one of H, V, D45, A135, R, L, or ``"custom"`` with a Jones vector."""
    if label == "custom":
        if jones is None:
            raise SpecError("a custom analyzer needs a Jones vector")
        return Analyzer("custom", jones)
    if label not in _JONES:
        raise SpecError(f"unknown analyzer label {label!r}; expected one of {LABELS}")
    return Analyzer(label, _JONES[label])


@dataclass(frozen=True)
class MeasurementScheme:
    settings: tuple

    def __post_init__(self):
        object.__setattr__(self, "settings", tuple(tuple(pair) for pair in self.settings))

    def __len__(self):
        return len(self.settings)

    @classmethod
    def from_labels(cls, pairs):
        return cls(tuple((canonical_analyzer(a), canonical_analyzer(b)) for a, b in pairs))

    def labels(self):
        return [(a.label, b.label) for a, b in self.settings]


CANONICAL_PAIRS = (
    ("H", "H"), ("H", "D45"), ("H", "R"), ("H", "L"),
    ("D45", "H"), ("D45", "D45"), ("D45", "R"), ("D45", "L"),
    ("R", "H"), ("R", "D45"), ("R", "R"),
    ("L", "H"), ("L", "L"), ("L", "D45"), ("L", "R"),
    ("R", "L"),
)  # fmt: skip


def canonical_scheme():
    """The sixteen coincidence settings built from H, D45, R and L analyzers."""
    return MeasurementScheme.from_labels(CANONICAL_PAIRS)


def _rho(state):
    if isinstance(state, TwoPhotonState):
        return state.rho
    return TwoPhotonState(state).rho


def coincidence_probability(rho, a1, a2):
    """Probability that both photons pass analyzers ``a1`` and ``a2``."""
    op = qmat.tensor_product(a1.projector, a2.projector)
    p = np.trace(_rho(rho) @ op)
    if abs(p.imag) > IMAG_TOL:
        raise RecordError(f"coincidence probability has imaginary part {p.imag:.3g}")
    return float(p.real)


def _design_row(a1, a2):
    op = qmat.tensor_product(a1.projector, a2.projector)
    # 0.25 * Tr(sigma_ij op) for all 16 (i, j), flattened row-major
    row = 0.25 * np.einsum("ijab,ba->ij", PAULI2, op).ravel()
    if np.max(np.abs(row.imag)) > IMAG_TOL:
        raise RecordError("design matrix has a complex entry")
    return row.real


def _dependent_settings(D):
    """Indices of rows that do not raise the rank of the rows before them."""
    dependent, rank = [], 0
    for m in range(D.shape[0]):
        r = np.linalg.matrix_rank(D[: m + 1])
        if r == rank:
            dependent.append(m)
        rank = r
    return rank, dependent


def lu_factor(A):
    """Gaussian elimination with partial pivoting.

    Returns ``(lu, perm)`` with unit-lower L and U packed into ``lu``.
    Raises :class:`SingularSchemeError` on a vanishing pivot.
    """
    lu = np.array(A, dtype=float)
    n = lu.shape[0]
    perm = np.arange(n)
    scale = np.max(np.abs(lu)) if lu.size else 0.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[piv, k]) <= PIVOT_TOL * scale:
            raise SingularSchemeError(f"matrix is singular at column {k}")
        if piv != k:
            lu[[k, piv]] = lu[[piv, k]]
            perm[[k, piv]] = perm[[piv, k]]
        lu[k + 1 :, k] /= lu[k, k]
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return lu, perm


def lu_solve(factors, b):
    lu, perm = factors
    y = np.asarray(b, dtype=float)[perm]
    n = lu.shape[0]
    for i in range(n):
        y[i] -= lu[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - lu[i, i + 1 :] @ y[i + 1 :]) / lu[i, i]
    return y


def _factor_scheme(D):
    try:
        return lu_factor(D)
    except SingularSchemeError:
        rank, dependent = _dependent_settings(D)
        raise SingularSchemeError(
            f"measurement scheme has rank {rank} < 16; dependent settings {dependent}",
            rank=rank,
            dependent=dependent,
        ) from None


@functools.lru_cache(maxsize=64)
def _system(scheme):
    if len(scheme) != 16:
        raise SpecError(f"linear inversion needs 16 settings, got {len(scheme)}")
    D = np.array([_design_row(a1, a2) for a1, a2 in scheme.settings])
    D.setflags(write=False)
    factors = _factor_scheme(D)
    inv = np.column_stack([lu_solve(factors, e) for e in np.eye(16)])
    cond = float(np.max(np.sum(np.abs(D), axis=1)) * np.max(np.sum(np.abs(inv), axis=1)))
    return D, cond, factors


def design_matrix(scheme):
    """The 16x16 map from Stokes parameters to coincidence probabilities.

    Row ``m`` belongs to setting ``m``; column ``4 * i + j`` to S_ij. Returns
    the matrix and its infinity-norm condition number.
    """
    D, cond, _ = _system(scheme)
    return D.copy(), cond


@dataclass(frozen=True)
class PoissonNoise:
    expected_pairs: float
    seed: int = 0

    def __post_init__(self):
        if not float(self.expected_pairs) > 0.0:
            raise SpecError(f"expected_pairs must be positive, got {self.expected_pairs!r}")
        check_seed(self.seed)


@dataclass(frozen=True)
class CoincidenceRecord:
    """One setting's outcome: an exact probability or a (Poisson) count.

    ``expected_pairs`` is the mean number of pairs per setting for simulated
    counts; it is informational and not needed for inversion.
    """

    setting_index: int
    probability: Optional[float] = None
    counts: Optional[float] = None
    expected_pairs: Optional[float] = None

    def __post_init__(self):
        if (self.probability is None) == (self.counts is None):
            raise RecordError("a record holds exactly one of probability or counts")
        if self.counts is not None and self.counts < 0:
            raise RecordError(f"counts must be non-negative, got {self.counts!r}")


def simulate(rho, scheme, noise=None):
    """Coincidence records for every setting of ``scheme``.

    ``noise=None`` records exact probabilities. A :class:`PoissonNoise` draws
    Poisson(expected_pairs * p) counts; setting ``m`` uses the stream keyed
    by ``(seed, m)``.
    """
    rho = _rho(rho)
    if noise is not None and not isinstance(noise, PoissonNoise):
        raise SpecError(f"unsupported noise model {noise!r}")
    records = []
    for m, (a1, a2) in enumerate(scheme.settings):
        p = coincidence_probability(rho, a1, a2)
        if noise is None:
            records.append(CoincidenceRecord(m, probability=p))
        else:
            lam = noise.expected_pairs * max(p, 0.0)
            n = int(generator(noise.seed, m).poisson(lam))
            records.append(CoincidenceRecord(m, counts=n, expected_pairs=noise.expected_pairs))
    return records


@dataclass(frozen=True)
class TomographyResult:
    tensor: np.ndarray
    flux_estimate: Optional[float]
    condition_estimate: float
    max_residual: float
    physical: bool
    report: qmat.DensityReport

    @property
    def state(self):
        return density_from_stokes2(self.tensor, strict=False)


def _data_vector(records, n):
    records = list(records)
    if len(records) != n:
        raise RecordError(f"expected {n} records, got {len(records)}")
    modes = {r.counts is not None for r in records}
    if len(modes) != 1:
        raise RecordError("records mix probabilities and counts")
    counts_mode = modes.pop()
    data = np.full(n, np.nan)
    for r in records:
        if not 0 <= r.setting_index < n or not np.isnan(data[r.setting_index]):
            raise RecordError(f"bad or repeated setting index {r.setting_index}")
        data[r.setting_index] = r.counts if counts_mode else r.probability
    return data, counts_mode


def invert(records, scheme):
    """Recover the Stokes tensor from one record per setting.

    In counts mode the solve yields flux * S_ij; the flux estimate is the
    recovered S_00 component and the tensor is divided by it. Probability
    mode is handled the same way with the flux fixed near 1.
    """
    D, cond, factors = _system(scheme)
    data, counts_mode = _data_vector(records, len(scheme))
    u = lu_solve(factors, data)
    scale = u[0]
    if not scale > 0.0:
        raise NormalizationError(f"recovered normalization {scale!r} is not positive")
    s = u / scale
    s[0] = 1.0
    residual = float(np.max(np.abs(D @ s - data / scale)))
    tensor = s.reshape(4, 4)
    tensor.setflags(write=False)
    state = density_from_stokes2(tensor, strict=False)
    return TomographyResult(
        tensor=tensor,
        flux_estimate=float(scale) if counts_mode else None,
        condition_estimate=cond,
        max_residual=residual,
        physical=state.physical,
        report=state.report,
    )

"""Small dense complex linear algebra for one- and two-photon operators.

Matrices are plain ``numpy`` complex arrays of shape (2, 2) or (4, 4). The
two-photon basis order is |HH>, |HV>, |VH>, |VV>, photon 1 being the first
tensor factor.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidDimensionError, NonHermitianError

TOL_TRACE = 1e-9
TOL_HERM = 1e-9
TOL_PSD = 1e-10

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def as_matrix(m, dims=(2, 4)):
    """Return ``m`` as a complex128 square array, checking its dimension."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in dims:
        raise InvalidDimensionError(
            f"expected a square matrix of dimension {' or '.join(map(str, dims))}, "
            f"got shape {arr.shape}"
        )
    return arr


def frozen(arr):
    """Read-only copy of ``arr``; used for shared constants."""
    out = np.array(arr, dtype=np.complex128)
    out.setflags(write=False)
    return out


I2 = frozen(np.eye(2))
I4 = frozen(np.eye(4))


def dagger(m):
    return np.conj(np.asarray(m)).T


def ket_to_density(psi):
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    return np.outer(psi, psi.conj())


def tensor_product(a, b):
    """Kronecker product of two one-photon operators (photon 1 first)."""
    a = as_matrix(a, dims=(2,))
    b = as_matrix(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(rho, keep):
    """Reduced 2x2 operator of photon ``keep`` (1 or 2) of a 4x4 operator."""
    rho = as_matrix(rho, dims=(4,))
    t = rho.reshape(2, 2, 2, 2)  # t[a, b, a', b'] = <ab|rho|a'b'>
    if keep == 1:
        return np.einsum("abcb->ac", t)
    if keep == 2:
        return np.einsum("abad->bd", t)
    raise ValueError(f"photon id must be 1 or 2, got {keep!r}")


def hermiticity_deviation(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def _jacobi_eigenvalues(m):
    """Cyclic complex Jacobi sweeps on the Hermitian part of ``m``."""
    n = m.shape[0]
    h = 0.5 * (m + m.conj().T)
    a = [[complex(h[i, j]) for j in range(n)] for i in range(n)]
    scale = max(1.0, math.sqrt(sum(abs(x) ** 2 for row in a for x in row)))
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(sum(abs(a[p][q]) ** 2 for p, q in pairs) * 2.0)
        if off < JACOBI_TOL * scale:
            break
        for p, q in pairs:
            apq = a[p][q]
            r = abs(apq)
            if r == 0.0:
                continue
            # phase to make the (p, q) entry real, then a real Givens rotation
            ph = (apq / r).conjugate()
            app = a[p][p].real
            aqq = a[q][q].real
            theta = (aqq - app) / (2.0 * r)
            t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):
                if k == p or k == q:
                    continue
                akp = a[k][p]
                akq = a[k][q]
                nkp = c * akp - s * ph * akq
                nkq = s * akp + c * ph * akq
                a[k][p] = nkp
                a[p][k] = nkp.conjugate()
                a[k][q] = nkq
                a[q][k] = nkq.conjugate()
            a[p][p] = complex(app - t * r)
            a[q][q] = complex(aqq + t * r)
            a[p][q] = 0j
            a[q][p] = 0j
    return sorted(a[i][i].real for i in range(n))


def hermitian_eigenvalues(m, tol_herm=TOL_HERM):
    """Ascending eigenvalues of a Hermitian 2x2 or 4x4 matrix.

    Raises
    ------
    NonHermitianError
        If ``m`` departs from its adjoint by more than ``tol_herm``.
    """
    m = as_matrix(m)
    dev = hermiticity_deviation(m)
    if dev > tol_herm:
        raise NonHermitianError(f"matrix is not Hermitian (deviation {dev:.3g})")
    return _jacobi_eigenvalues(m)


@dataclass(frozen=True)
class DensityReport:
    trace_deviation: float
    hermiticity_deviation: float
    min_eigenvalue: float
    is_valid: bool
    failed: tuple = ()  # names of the fields that made the report invalid


def validate_density(m, tol_trace=TOL_TRACE, tol_herm=TOL_HERM, tol_psd=TOL_PSD):
    """Check that ``m`` is a unit-trace, Hermitian, positive semidefinite matrix.

    Never raises for a matrix of valid dimension; the outcome is reported.
    """
    m = as_matrix(m)
    trace_dev = float(abs(np.trace(m) - 1.0))
    herm_dev = hermiticity_deviation(m)
    min_eig = _jacobi_eigenvalues(m)[0]
    failed = []
    if not trace_dev <= tol_trace:
        failed.append("trace_deviation")
    if not herm_dev <= tol_herm:
        failed.append("hermiticity_deviation")
    if not min_eig >= -tol_psd:
        failed.append("min_eigenvalue")
    return DensityReport(trace_dev, herm_dev, min_eig, not failed, tuple(failed))


def purity(rho):
    """Tr(rho^2) for a Hermitian ``rho``."""
    rho = as_matrix(rho)
    return float(np.real(np.vdot(rho.conj().T, rho)))

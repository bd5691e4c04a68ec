"""Pauli-basis (Stokes) coordinates of one- and two-photon density matrices.

Conventions::

    sigma_0 = I
    sigma_1 = diag(1, -1)              H/V population difference
    sigma_2 = [[0, 1], [1, 0]]         +45/-45 linear
    sigma_3 = [[0, -1j], [1j, 0]]      circular, |L> = (|H> + i|V>)/sqrt(2)

so that the analyzers are H = (s0 + s1)/2, D = (s0 + s2)/2, R = (s0 - s3)/2
and L = (s0 + s3)/2. A Stokes vector is a real array of shape (4,), a Stokes
tensor a real array of shape (4, 4) with ``S[i, j] = Tr(rho sigma_i (x) sigma_j)``.
"""

import numpy as np

from . import qmat
from .errors import DensityError, NonHermitianError, NormalizationError
from .states import TwoPhotonState, describe_failures

IMAG_TOL = 1e-10
NORM_TOL = 1e-9

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[1, 0], [0, -1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
    ],
    dtype=np.complex128,
)
PAULI.setflags(write=False)

# PAULI2[i, j] = sigma_i (x) sigma_j
PAULI2 = np.einsum("iab,jcd->ijacbd", PAULI, PAULI).reshape(4, 4, 4, 4)
PAULI2.setflags(write=False)


def _index(j):
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or not 0 <= j <= 3:
        raise IndexError(f"Pauli index must be 0, 1, 2 or 3, got {j!r}")
    return int(j)


def pauli(j):
    """One-photon Pauli matrix sigma_j (a fresh writable copy)."""
    return PAULI[_index(j)].copy()


def two_photon_pauli(i, j):
    """sigma_i (x) sigma_j in the |HH>, |HV>, |VH>, |VV> basis."""
    return PAULI2[_index(i), _index(j)].copy()


def _real(values):
    imag = float(np.max(np.abs(np.imag(values))))
    if imag > IMAG_TOL:
        raise NonHermitianError(f"Stokes parameters have imaginary residue {imag:.3g}")
    return np.ascontiguousarray(np.real(values))


def stokes_from_density1(rho1, strict=True):
    """S_j = Tr(rho1 sigma_j) for a 2x2 density matrix."""
    rho1 = qmat.as_matrix(rho1, dims=(2,))
    if strict:
        report = qmat.validate_density(rho1)
        if not report.is_valid:
            raise DensityError("not a valid density matrix: " + describe_failures(report), report)
    return _real(np.einsum("ab,jba->j", rho1, PAULI))


def _check_s0(s0):
    if abs(s0 - 1.0) > NORM_TOL:
        raise NormalizationError(f"S0 must be 1, got {s0!r}")


def density_from_stokes1(s, strict=True):
    """rho1 = (1/2) sum_j S_j sigma_j.

    With ``strict`` a Stokes vector outside the unit ball raises
    :class:`DensityError`; otherwise the non-physical matrix is returned.
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (4,):
        raise ValueError(f"a Stokes vector has 4 entries, got shape {s.shape}")
    _check_s0(s[0])
    rho1 = 0.5 * np.einsum("j,jab->ab", s, PAULI)
    if strict:
        report = qmat.validate_density(rho1)
        if not report.is_valid:
            raise DensityError(
                f"Stokes vector lies outside the unit ball (|S| = {np.linalg.norm(s[1:]):.12g})",
                report,
            )
    return rho1


def stokes_from_density2(rho12, strict=True):
    """S_ij = Tr(rho12 sigma_i (x) sigma_j) as a real 4x4 array."""
    if isinstance(rho12, TwoPhotonState):
        rho = rho12.rho
    else:
        rho = TwoPhotonState(rho12, strict=strict).rho
    return _real(np.einsum("ab,ijba->ij", rho, PAULI2))


def density_from_stokes2(S, strict=True):
    """rho12 = (1/4) sum_ij S_ij sigma_i (x) sigma_j.

    The result is always Hermitian with unit trace but need not be positive.
    With ``strict=False`` such a tensor still yields a :class:`TwoPhotonState`
    whose ``report`` says why it is not physical.
    """
    S = np.asarray(S, dtype=float)
    if S.shape != (4, 4):
        raise ValueError(f"a Stokes tensor has shape (4, 4), got {S.shape}")
    _check_s0(S[0, 0])
    rho = 0.25 * np.einsum("ij,ijab->ab", S, PAULI2)
    return TwoPhotonState(rho, strict=strict)


def reduced_stokes(S, which):
    """One-photon Stokes vector of photon ``which`` read off the tensor.

    Photon 1 is column 0 (S_00, S_10, S_20, S_30), photon 2 is row 0.
    """
    S = np.asarray(S, dtype=float)
    if which == 1:
        return S[:, 0].copy()
    if which == 2:
        return S[0, :].copy()
    raise ValueError(f"photon id must be 1 or 2, got {which!r}")

"""Degrees of one- and two-photon polarization and state classification."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import NormalizationError

CLASSIFY_TOL = 1e-8
NORM_TOL = 1e-9


def _tensor(S):
    S = np.asarray(S, dtype=float)
    if S.shape != (4, 4):
        raise ValueError(f"a Stokes tensor has shape (4, 4), got {S.shape}")
    if abs(S[0, 0] - 1.0) > NORM_TOL:
        raise NormalizationError(f"S00 must be 1, got {S[0, 0]!r}")
    return S


def degree_of_polarization(s):
    """sqrt(S1^2 + S2^2 + S3^2) of a one-photon Stokes vector with S0 = 1."""
    s = np.asarray(s, dtype=float)
    if s.shape != (4,):
        raise ValueError(f"a Stokes vector has 4 entries, got shape {s.shape}")
    if abs(s[0] - 1.0) > NORM_TOL:
        raise NormalizationError(f"S0 must be 1, got {s[0]!r}")
    return math.sqrt(s[1] ** 2 + s[2] ** 2 + s[3] ** 2)


def correlation_sum(S):
    """Sum of S_ij^2 over i, j = 1..3."""
    return float(np.sum(np.asarray(S, dtype=float)[1:, 1:] ** 2))


@dataclass(frozen=True)
class MeasureSet:
    """Scalar summary of a two-photon Stokes tensor.

    ``p12_sq_signed`` is the signed square of the degree of two-photon
    polarization; when it is negative the state is described by ``pm``
    instead, with ``pm**2 == -p12_sq_signed``.
    """

    p1: float
    p2: float
    pbar_sq: float
    p12_sq_signed: float
    p12: float
    pm: float
    purity: float


def two_photon_measures(S):
    S = _tensor(S)
    p1_sq = float(np.sum(S[1:, 0] ** 2))
    p2_sq = float(np.sum(S[0, 1:] ** 2))
    x = 0.5 * (correlation_sum(S) - 1.0)
    return MeasureSet(
        p1=math.sqrt(p1_sq),
        p2=math.sqrt(p2_sq),
        pbar_sq=0.5 * (p1_sq + p2_sq),
        p12_sq_signed=x,
        p12=math.sqrt(x) if x > 0.0 else 0.0,
        pm=math.sqrt(-x) if x < 0.0 else 0.0,
        purity=0.25 * float(np.sum(S**2)),
    )


@dataclass(frozen=True)
class StateClass:
    is_pure: bool
    is_product_pure: bool
    is_max_entangled: bool
    witness_entangled: bool
    tol: float


def classify(S, tol=CLASSIFY_TOL):
    """Classify a Stokes tensor.

    ``witness_entangled`` is one-sided: every separable state has a
    non-positive ``p12_sq_signed``, so a positive value proves entanglement,
    but many entangled mixed states (Werner states with 1/3 < lambda <= 1/sqrt(3),
    for instance) are not flagged.
    """
    S = _tensor(S)
    m = two_photon_measures(S)
    corr = correlation_sum(S)
    is_pure = abs(m.purity - 1.0) <= tol
    marg1 = float(np.sum(S[1:, 0] ** 2))
    marg2 = float(np.sum(S[0, 1:] ** 2))
    is_product_pure = (
        is_pure and abs(marg1 - 1.0) <= tol and abs(marg2 - 1.0) <= tol and abs(corr - 1.0) <= tol
    )
    is_max_entangled = (
        is_pure
        and bool(np.all(np.abs(S[1:, 0]) <= tol))
        and bool(np.all(np.abs(S[0, 1:]) <= tol))
        and abs(corr - 3.0) <= tol
    )
    return StateClass(
        is_pure=is_pure,
        is_product_pure=is_product_pure,
        is_max_entangled=is_max_entangled,
        witness_entangled=m.p12_sq_signed > tol,
        tol=tol,
    )

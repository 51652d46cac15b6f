"""Unified-(q,s) entropy and its Renyi, Tsallis and von Neumann limits.

All logarithms are natural.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .linalg import EIG_CLAMP, DomainError, as_density

BRANCH_TOL = 1e-9


class Branch(enum.Enum):
    GENERIC = "generic"
    RENYI = "renyi"
    VON_NEUMANN = "von_neumann"
    TSALLIS = "tsallis"


@dataclass(frozen=True)
class MeasureParams:
    """The pair (q, s) with the evaluation branch resolved from it.

    ``TSALLIS`` marks the generic branch at s = 1; it is evaluated with the
    generic formula and only distinguished for reporting.
    """

    q: float
    s: float
    branch: Branch = field(init=False)

    def __post_init__(self):
        q, s = float(self.q), float(self.s)
        if not (np.isfinite(q) and np.isfinite(s)) or q < 0 or s < 0:
            raise DomainError(f"(q, s) must be finite and nonnegative, got ({q}, {s})")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "s", s)
        if abs(q - 1.0) < BRANCH_TOL:
            branch = Branch.VON_NEUMANN
        elif s < BRANCH_TOL:
            branch = Branch.RENYI
        elif s == 1.0:
            branch = Branch.TSALLIS
        else:
            branch = Branch.GENERIC
        object.__setattr__(self, "branch", branch)

    def __iter__(self):
        yield self.q
        yield self.s


def as_params(p) -> MeasureParams:
    if isinstance(p, MeasureParams):
        return p
    q, s = p
    return MeasureParams(q, s)


def _spectrum(rho) -> np.ndarray:
    lam = np.linalg.eigvalsh(as_density(rho).matrix)
    lam = np.where(lam < EIG_CLAMP, 0.0, lam)
    # renormalize so a pure state gives exactly (1, 0, ...): near q = 1 the
    # factor 1 / (1 - q) would otherwise amplify eigensolver rounding
    return lam / lam.sum()


def power_trace(lam, q: float) -> np.ndarray:
    """``sum_i lam_i**q`` along the last axis with ``0**q := 0``."""
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore"):
        terms = np.where(lam > 0, np.abs(lam) ** q, 0.0)
    return terms.sum(axis=-1)


def shannon(lam) -> np.ndarray:
    """``-sum lam ln lam`` along the last axis, with 0 ln 0 := 0."""
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam > 0, -lam * np.log(np.where(lam > 0, lam, 1.0)), 0.0)
    return terms.sum(axis=-1)


def unified_from_spectrum(lam, p) -> np.ndarray:
    """Unified-(q,s) entropy of spectra stacked along the last axis.

    The generic branch is written as ``expm1(s ln Tr rho^q) / ((1-q) s)``,
    which is algebraically the textbook expression but keeps full precision
    for small s.
    """
    p = as_params(p)
    if p.branch is Branch.VON_NEUMANN:
        return shannon(lam) + 0.0
    log_tr = np.log(power_trace(lam, p.q))
    if p.branch is Branch.RENYI:
        return log_tr / (1.0 - p.q) + 0.0
    return np.expm1(p.s * log_tr) / ((1.0 - p.q) * p.s) + 0.0


def unified_entropy(rho, p) -> float:
    """Unified-(q,s) entropy ``[(Tr rho^q)^s - 1] / ((1-q) s)``.

    Parameters
    ----------
    rho : DensityMatrix or PureState
    p : MeasureParams or (q, s) tuple
        Near q = 1 the von Neumann entropy is returned, near s = 0 the
        Renyi-q entropy.

    Returns
    -------
    float
    """
    return float(unified_from_spectrum(_spectrum(rho), p))


def renyi_entropy(rho, q: float) -> float:
    if q <= 0 or abs(q - 1.0) < BRANCH_TOL:
        raise DomainError(f"Renyi entropy needs q > 0 and q != 1, got {q}")
    return float(np.log(power_trace(_spectrum(rho), q)) / (1.0 - q) + 0.0)


def tsallis_entropy(rho, q: float) -> float:
    if q <= 0 or abs(q - 1.0) < BRANCH_TOL:
        raise DomainError(f"Tsallis entropy needs q > 0 and q != 1, got {q}")
    return unified_entropy(rho, MeasureParams(q, 1.0))


def von_neumann(rho) -> float:
    return float(shannon(_spectrum(rho)))


def binary_entropy(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return shannon(np.stack([t, 1.0 - t], axis=-1))

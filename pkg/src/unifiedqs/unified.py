"""Unified-(q,s) entanglement of pure states and two-qubit mixed states."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .concurrence import concurrence_wootters, eof_from_concurrence
from .entropy import BRANCH_TOL, Branch, MeasureParams, as_params, unified_entropy
from .linalg import DomainError, PureState, _validate_cut, partial_trace

X_TOL = 1e-9
LN2 = np.log(2.0)


class OutOfDomainError(DomainError):
    """(q, s) lies outside the region where the closed form is proven."""


class NonCertifiedWarning(UserWarning):
    """A closed-form value was forced outside its proven parameter region."""


@dataclass(frozen=True)
class TwoQubitFormulaDomain:
    q: float
    s: float

    @property
    def valid(self) -> bool:
        return in_formula_domain(self.q, self.s)


def in_formula_domain(q: float, s: float) -> bool:
    """True when ``q >= 1, 0 <= s <= 1, q s <= 3`` (within 1e-9)."""
    return q >= 1.0 - BRANCH_TOL and -BRANCH_TOL <= s <= 1.0 + BRANCH_TOL and q * s <= 3.0 + BRANCH_TOL


def in_monogamy_domain(q: float, s: float) -> bool:
    """True when ``q >= 2, 0 <= s <= 1, q s <= 3`` (within 1e-9)."""
    return q >= 2.0 - BRANCH_TOL and in_formula_domain(q, s)


def _clean_x(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(x < -X_TOL) or np.any(x > 1.0 + X_TOL) or np.any(np.isnan(x)):
        raise DomainError("f_qs is defined on 0 <= x <= 1")
    return np.clip(x, 0.0, 1.0)


def _log_moment(x: np.ndarray, q: float) -> np.ndarray:
    """``ln[((1+t)^q + (1-t)^q) / 2^q]`` with ``t = sqrt(1 - x^2)``.

    Written as ``q ln(1 - u/2) + ln(1 + (u / (2 - u))^q)`` with
    ``u = 1 - t = x^2 / (1 + t)``, which is exact at x = 0 and keeps relative
    accuracy for small x.
    """
    u = x * x / (1.0 + np.sqrt(1.0 - x * x))
    ratio = u / (2.0 - u)
    with np.errstate(divide="ignore"):
        ratio_q = np.where(ratio > 0, np.abs(ratio) ** q, 0.0)
    return q * np.log1p(-0.5 * u) + np.log1p(ratio_q)


def f_qs(x, p):
    """Map from concurrence to unified-(q,s) entanglement.

    ``f(x) = [((1+t)^q + (1-t)^q)^s - 2^{qs}] / ((1-q) s 2^{qs})`` with
    ``t = sqrt(1 - x^2)``; the Renyi form is used as s -> 0 and the
    entanglement-of-formation curve as q -> 1.

    Parameters
    ----------
    x : float or array_like
        Concurrence values in [0, 1]. Overshoot up to 1e-9 is clamped.
    p : MeasureParams or (q, s)

    Returns
    -------
    float or ndarray
    """
    p = as_params(p)
    xa = _clean_x(x)
    if p.branch is Branch.VON_NEUMANN:
        out = eof_from_concurrence(xa)
    elif p.branch is Branch.RENYI:
        out = _log_moment(xa, p.q) / (1.0 - p.q)
    else:
        out = np.expm1(p.s * _log_moment(xa, p.q)) / ((1.0 - p.q) * p.s)
    out = out + 0.0  # no negative zeros
    return float(out) if np.ndim(out) == 0 else out


def unified_ent_pure(psi: PureState, side, p) -> float:
    """Unified-(q,s) entropy of the reduced state on ``side`` of the cut."""
    side, _ = _validate_cut(psi.dims, side)
    return unified_entropy(partial_trace(psi, side), p)


def check_formula_domain(p, force: bool = False) -> MeasureParams:
    p = as_params(p)
    if not in_formula_domain(p.q, p.s):
        if not force:
            raise OutOfDomainError(
                f"(q, s) = ({p.q}, {p.s}) is outside q >= 1, 0 <= s <= 1, qs <= 3"
            )
        warnings.warn(
            f"closed form used outside its proven region at (q, s) = ({p.q}, {p.s})",
            NonCertifiedWarning,
            stacklevel=3,
        )
    return p


def unified_ent_two_qubit(rho, p, force: bool = False) -> float:
    """Unified-(q,s) entanglement of a two-qubit state via ``f_qs(C)``.

    Raises OutOfDomainError unless ``force`` is set, in which case the value
    is returned with a NonCertifiedWarning.
    """
    p = check_formula_domain(p, force)
    return f_qs(concurrence_wootters(rho).value, p)


def renyi_ent_two_qubit(rho, q: float, force: bool = False) -> float:
    return unified_ent_two_qubit(rho, MeasureParams(q, 0.0), force)


def tsallis_ent_two_qubit(rho, q: float, force: bool = False) -> float:
    return unified_ent_two_qubit(rho, MeasureParams(q, 1.0), force)

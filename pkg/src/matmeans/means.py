"""Two-matrix and multi-matrix means on the positive definite cone.

Every mean is built through the functional calculus of
:mod:`matmeans.densela`; results are explicitly symmetrized.  Each mean
that is a spectral transform of one inner aggregate also has a
``*_spectrum`` companion returning its descending eigenvalues straight
from the inner decomposition, which the property suite uses to avoid a
second decomposition of the assembled matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .densela import (
    EigenDecomposition,
    as_square_matrix,
    pd_log,
    pd_power,
    require_pd,
    sym_eigen,
    symmetrize,
)

__all__ = [
    "WeightVector",
    "MeanParams",
    "geometric_mean",
    "power_mean",
    "power_mean_spectrum",
    "log_euclidean",
    "log_euclidean_spectrum",
    "arithmetic_path",
    "sandwich_mean",
    "sandwich_mean_spectrum",
    "cross_term",
    "hermitian_part",
    "power_mean_multi",
    "power_mean_multi_spectrum",
    "geometric_mean_unitary_factor",
]

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative weights summing to one."""

    alphas: tuple[float, ...]

    def __post_init__(self):
        if len(self.alphas) < 1:
            raise ValueError("weight vector must be nonempty")
        if any(a < 0.0 or not math.isfinite(a) for a in self.alphas):
            raise ValueError(f"weights must be finite and nonnegative: {self.alphas}")
        total = math.fsum(self.alphas)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 within {WEIGHT_SUM_TOL}: sum={total!r}")

    @classmethod
    def coerce(cls, w) -> "WeightVector":
        if isinstance(w, WeightVector):
            return w
        return cls(tuple(float(a) for a in w))

    def __len__(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class MeanParams:
    """Interpolation weight t in [0, 1] and power-mean exponent p."""

    t: float
    p: float

    def __post_init__(self):
        _check_t(self.t)
        if not math.isfinite(self.p):
            raise ValueError(f"p must be finite, got {self.p!r}")


def _check_t(t: float) -> float:
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    return float(t)


def _pd_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    am = require_pd(a, "a")
    bm = require_pd(b, "b")
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return am, bm


def geometric_mean(a, b, t: float) -> np.ndarray:
    """Geodesic mean A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}."""
    _check_t(t)
    am, bm = _pd_pair(a, b)
    ea = sym_eigen(am)
    rh = ea.apply(math.sqrt)
    rih = ea.apply(lambda x: 1.0 / math.sqrt(x))
    c = symmetrize(rih @ bm @ rih)
    ct = pd_power(c, t)
    return symmetrize(rh @ ct @ rh)


def _collapsed(a, b, t: float) -> np.ndarray | None:
    """Weight-collapse endpoints: every interpolating mean equals A or B.

    Taking the exact endpoint avoids the p-th-power round trip, whose
    rounding grows like the condition number raised to |p|.
    """
    am, bm = _pd_pair(a, b)
    if t == 0.0:
        return am.copy()
    if t == 1.0:
        return bm.copy()
    return None


def _power_inner(a, b, t: float, p: float) -> EigenDecomposition:
    m = (1.0 - t) * pd_power(a, p) + t * pd_power(b, p)
    return sym_eigen(symmetrize(m))


def power_mean(a, b, t: float, p: float) -> np.ndarray:
    """Weighted power mean ((1-t) A^p + t B^p)^{1/p}, log-Euclidean at p = 0."""
    _check_t(t)
    end = _collapsed(a, b, t)
    if end is not None:
        return end
    if p == 0.0:
        return log_euclidean(a, b, t)
    e = _power_inner(a, b, t, p)
    _require_positive_spectrum(e, "power mean aggregate")
    return e.apply(lambda x: x ** (1.0 / p))


def power_mean_spectrum(a, b, t: float, p: float) -> np.ndarray:
    """Descending eigenvalues of power_mean(a, b, t, p)."""
    _check_t(t)
    end = _collapsed(a, b, t)
    if end is not None:
        return np.array(sym_eigen(end).lam)
    if p == 0.0:
        return log_euclidean_spectrum(a, b, t)
    e = _power_inner(a, b, t, p)
    _require_positive_spectrum(e, "power mean aggregate")
    return np.sort(e.lam ** (1.0 / p))[::-1]


def _require_positive_spectrum(e: EigenDecomposition, what: str) -> None:
    if float(e.lam[-1]) <= 0.0:
        raise ValueError(f"{what} lost positivity (smallest eigenvalue {e.lam[-1]:.6e})")


def _log_inner(a, b, t: float) -> EigenDecomposition:
    h = (1.0 - t) * pd_log(a) + t * pd_log(b)
    return sym_eigen(symmetrize(h))


def log_euclidean(a, b, t: float) -> np.ndarray:
    """exp((1-t) log A + t log B)."""
    _check_t(t)
    end = _collapsed(a, b, t)
    if end is not None:
        return end
    return _log_inner(a, b, t).apply(math.exp)


def log_euclidean_spectrum(a, b, t: float) -> np.ndarray:
    """Descending eigenvalues of the log-Euclidean mean."""
    _check_t(t)
    end = _collapsed(a, b, t)
    if end is not None:
        return np.array(sym_eigen(end).lam)
    return np.exp(_log_inner(a, b, t).lam)


def arithmetic_path(a, b, t: float) -> np.ndarray:
    """Linear path (1-t) A + t B."""
    _check_t(t)
    am = require_pd(a, "a")
    bm = require_pd(b, "b")
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return symmetrize((1.0 - t) * am + t * bm)


def _sandwich_inner(a, b, t: float, p: float) -> EigenDecomposition:
    bt = pd_power(b, t * p / 2.0)
    m = bt @ pd_power(a, (1.0 - t) * p) @ bt
    return sym_eigen(symmetrize(m))


# Beyond this eigenvalue range the assembled sandwich aggregate loses too
# much relative accuracy in its small eigenvalues; the spectrum is then
# taken from the half-power factor instead, which only squares half the
# exponent.
_SANDWICH_RANGE_LOG10_LIMIT = 8.0


def _sandwich_range_log10(a, b, t: float, p: float) -> float:
    la = sym_eigen(a).lam
    lb = sym_eigen(b).lam
    return abs((1.0 - t) * p) * math.log10(float(la[0] / la[-1])) + abs(
        t * p
    ) * math.log10(float(lb[0] / lb[-1]))


def _sandwich_spectrum_via_factor(a, b, t: float, p: float) -> np.ndarray:
    # Eigenvalues of B^{tp/2} A^{(1-t)p} B^{tp/2} are the squared singular
    # values of H = B^{tp/2} A^{(1-t)p/2}, read off the symmetric block
    # matrix [[0, H], [H.T, 0]] whose spectrum is (+sigma, -sigma).
    h = pd_power(b, t * p / 2.0) @ pd_power(a, (1.0 - t) * p / 2.0)
    n = h.shape[0]
    z = np.zeros((n, n))
    sv = sym_eigen(np.block([[z, h], [h.T, z]])).lam[:n]
    return sv ** (2.0 / p)


def sandwich_mean(a, b, t: float, p: float) -> np.ndarray:
    """(B^{tp/2} A^{(1-t)p} B^{tp/2})^{1/p} for p > 0."""
    _check_t(t)
    if not p > 0.0:
        raise ValueError(f"sandwich mean requires p > 0, got {p!r}")
    end = _collapsed(a, b, t)
    if end is not None:
        return end
    e = _sandwich_inner(a, b, t, p)
    _require_positive_spectrum(e, "sandwich aggregate")
    return e.apply(lambda x: x ** (1.0 / p))


def sandwich_mean_spectrum(a, b, t: float, p: float) -> np.ndarray:
    """Descending eigenvalues of sandwich_mean(a, b, t, p)."""
    _check_t(t)
    if not p > 0.0:
        raise ValueError(f"sandwich mean requires p > 0, got {p!r}")
    end = _collapsed(a, b, t)
    if end is not None:
        return np.array(sym_eigen(end).lam)
    if _sandwich_range_log10(a, b, t, p) > _SANDWICH_RANGE_LOG10_LIMIT:
        return _sandwich_spectrum_via_factor(a, b, t, p)
    e = _sandwich_inner(a, b, t, p)
    _require_positive_spectrum(e, "sandwich aggregate")
    return e.lam ** (1.0 / p)


def cross_term(a, b, t: float) -> np.ndarray:
    """The generally non-symmetric product A^{1-t} B^t."""
    _check_t(t)
    am, bm = _pd_pair(a, b)
    return pd_power(am, 1.0 - t) @ pd_power(bm, t)


def hermitian_part(x) -> np.ndarray:
    """(X + X.T) / 2."""
    return symmetrize(as_square_matrix(x))


def _multi_validated(mats, weights) -> tuple[list[np.ndarray], WeightVector]:
    w = WeightVector.coerce(weights)
    ms = [require_pd(m, f"matrix {i}") for i, m in enumerate(mats)]
    if len(ms) != len(w):
        raise ValueError(f"{len(ms)} matrices but {len(w)} weights")
    shape = ms[0].shape
    for i, m in enumerate(ms):
        if m.shape != shape:
            raise ValueError(f"dimension mismatch at matrix {i}: {m.shape} vs {shape}")
    return ms, w


def _multi_inner(mats: Sequence, weights, p: float) -> EigenDecomposition:
    ms, w = _multi_validated(mats, weights)
    if p == 0.0:
        h = sum(alpha * pd_log(m) for alpha, m in zip(w.alphas, ms))
        return sym_eigen(symmetrize(h))
    m = sum(alpha * pd_power(mm, p) for alpha, mm in zip(w.alphas, ms))
    return sym_eigen(symmetrize(m))


def power_mean_multi(mats: Sequence, weights, p: float) -> np.ndarray:
    """(sum_i alpha_i A_i^p)^{1/p}; exp(sum_i alpha_i log A_i) at p = 0."""
    e = _multi_inner(mats, weights, p)
    if p == 0.0:
        return e.apply(math.exp)
    _require_positive_spectrum(e, "multi power mean aggregate")
    return e.apply(lambda x: x ** (1.0 / p))


def power_mean_multi_spectrum(mats: Sequence, weights, p: float) -> np.ndarray:
    """Descending eigenvalues of power_mean_multi(mats, weights, p)."""
    e = _multi_inner(mats, weights, p)
    if p == 0.0:
        return np.exp(e.lam)
    _require_positive_spectrum(e, "multi power mean aggregate")
    return np.sort(e.lam ** (1.0 / p))[::-1]


def geometric_mean_unitary_factor(a, b) -> np.ndarray:
    """Orthogonal U with A^{1/2} U B^{1/2} equal to the midpoint geometric mean."""
    am = require_pd(a, "a")
    bm = require_pd(b, "b")
    g = geometric_mean(am, bm, 0.5)
    return pd_power(am, -0.5) @ g @ pd_power(bm, -0.5)

"""h-harmonics of the dihedral group ``I_k`` for the weight ``h = prod |<x, v_j>|^lam``.

On the unit circle, ``|h|^2 = |sin k theta|^{2 lam}`` and the two basis
elements of degree ``n`` are

    Y_{n,1}(x) = r^n p_n(minus; x1 / r),
    Y_{n,2}(x) = x2 r^{n-1} p_{n-1}(plus; x1 / r),

with the sieved families of :mod:`dunkl_dihedral.sieved`.  Because ``p_n``
has the parity of ``n``, only even powers of ``r`` occur and the
homogenisation uses ``r^2 = x1^2 + x2^2`` without any division.

All norms and kernels are taken against the normalised circle weight
``c_lam |sin k theta|^{2 lam} d theta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from numpy.polynomial import Polynomial

from . import classical, quadrature, sieved
from .dihedral import make_group, vertex
from .dunkl import h_laplacian, intertwine_ridge_exact, ridge
from .errors import InconclusiveConvention, InvalidParameter
from .polyring import BiPoly

PARITY_RTOL = 1e-10


@dataclass(frozen=True)
class HHarmonic:
    """Homogeneous h-harmonic ``Y_{n,i}`` of ``I_k`` stored as a :class:`BiPoly`."""

    n: int
    i: int
    k: int
    lam: float
    poly: BiPoly

    def __call__(self, x):
        return self.poly(x)

    def on_circle(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.poly(np.cos(theta), np.sin(theta))

    def laplacian_residual(self) -> float:
        """Largest coefficient of ``Delta_h Y`` relative to the largest coefficient of ``Y``."""
        out = h_laplacian(make_group(self.k), self.lam, self.poly)
        return out.max_abs() / self.poly.max_abs()


def _check_index(n: int, i: int, k: int, lam: float):
    if i not in (1, 2):
        raise InvalidParameter("basis index i must be 1 or 2")
    if n < 0 or (i == 2 and n < 1):
        raise InvalidParameter(f"no basis element Y_({n},{i})")
    if k < 2:
        raise InvalidParameter("the dihedral group needs k >= 2")
    if lam < 0:
        raise InvalidParameter("lam must be nonnegative")


def homogenize(p: Polynomial, degree: int) -> BiPoly:
    """``r^d p(x1 / r)`` for a polynomial ``p`` of degree ``d`` with parity ``(-1)^d``.

    Coefficients of the wrong parity must be rounding noise; anything larger
    than ``PARITY_RTOL`` times the largest coefficient raises.
    """
    c = np.zeros(degree + 1)
    c[: len(p.coef)] = p.coef[: degree + 1]
    wrong = c[(degree - np.arange(degree + 1)) % 2 == 1]
    scale = np.abs(c).max() if c.size else 0.0
    if wrong.size and np.abs(wrong).max() > PARITY_RTOL * max(scale, 1.0):
        raise InvalidParameter("polynomial does not have the parity of its degree")
    r2 = BiPoly.monomial(2, 0) + BiPoly.monomial(0, 2)
    out = BiPoly()
    for a in range(degree % 2, degree + 1, 2):
        if c[a] != 0:
            out = out + BiPoly.monomial(a, 0, c[a]) * r2 ** ((degree - a) // 2)
    return out


def y_basis(n: int, i: int, k: int, lam: float) -> HHarmonic:
    """Basis element ``Y_{n,i}`` of the degree-``n`` h-harmonics."""
    _check_index(n, i, k, lam)
    if i == 1:
        p = sieved.sieved_poly(sieved.family("minus", k, lam), n)
        poly = homogenize(p, n)
    else:
        p = sieved.sieved_poly(sieved.family("plus", k, lam), n - 1)
        poly = BiPoly.x2() * homogenize(p, n - 1)
    return HHarmonic(n, i, k, float(lam), poly)


def h_norm(n: int, i: int, k: int, lam: float) -> float:
    """``H_{n,i} = c_lam int |Y_{n,i}|^2 |sin k theta|^{2 lam} d theta``.

    ``H_{n,1}`` is the minus-family norm.  ``H_{n,2}`` is the plus-family norm
    of degree ``n - 1`` scaled by the ratio of the two interval masses, which
    is ``1/2`` for every ``k >= 2``.
    """
    _check_index(n, i, k, lam)
    if i == 1:
        return sieved.sieved_norm(sieved.family("minus", k, lam), n)
    ratio = classical.mass_plus(k, lam) / classical.mass_minus(k, lam)
    return ratio * sieved.sieved_norm(sieved.family("plus", k, lam), n - 1)


def _unit(x, name="x"):
    """Validate an array of unit 2-vectors with shape ``(..., 2)``."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != 2 or np.any(np.abs(np.hypot(x[..., 0], x[..., 1]) - 1) > 1e-12):
        raise InvalidParameter(f"{name} must be unit 2-vectors")
    return x


def _basis_tables(k: int, lam: float, N: int, x: np.ndarray):
    """Values ``Y_{n,1}(x)`` and ``Y_{n,2}(x)`` for ``n = 0..N`` on the unit circle, stacked on axis 0."""
    t = np.clip(x[..., 0], -1.0, 1.0)
    y1 = sieved.sieved_table(sieved.family("minus", k, lam), N, t)
    y2 = np.zeros_like(y1)
    if N >= 1:
        y2[1:] = x[..., 1] * sieved.sieved_table(sieved.family("plus", k, lam), N - 1, t)
    return y1, y2


@lru_cache(maxsize=256)
def _norm_tables(k: int, lam: float, N: int):
    h1 = np.array([h_norm(n, 1, k, lam) for n in range(N + 1)])
    h2 = np.array([np.inf] + [h_norm(n, 2, k, lam) for n in range(1, N + 1)])
    h1.setflags(write=False)
    h2.setflags(write=False)
    return h1, h2


def reproducing_kernel_n(n: int, k: int, lam: float, x, y):
    """``P_n(x, y) = sum_i Y_{n,i}(x) Y_{n,i}(y) / H_{n,i}`` for unit ``x, y``.

    ``x`` and ``y`` may be arrays of points with shape ``(..., 2)``; they are
    broadcast against each other.
    """
    x, y = np.broadcast_arrays(_unit(x), _unit(y, "y"))
    if n < 0:
        raise InvalidParameter("degree must be nonnegative")
    ax, bx = _basis_tables(k, lam, n, x)
    ay, by = _basis_tables(k, lam, n, y)
    h1, h2 = _norm_tables(k, float(lam), n)
    return (ax[n] * ay[n] / h1[n] + bx[n] * by[n] / h2[n])[()]


class SeriesResult(NamedTuple):
    value: float
    tail_bound: float


@lru_cache(maxsize=256)
def _kernel_tail(k: int, lam: float, r: float, N: int, extra_terms: int = 4000) -> float:
    if r == 0:
        return 0.0
    minus = sieved.family("minus", k, lam)
    plus = sieved.family("plus", k, lam)
    total = 0.0
    for n in range(N + 1, N + 1 + extra_terms):
        term = (sieved.sup_bound(minus, n) ** 2 / h_norm(n, 1, k, lam)
                + sieved.sup_bound(plus, n - 1) ** 2 / h_norm(n, 2, k, lam)) * r**n
        total += term
        if n > N + 50 and term < 1e-40 * max(total, 1e-300):
            break
    return total


def poisson_series(k: int, lam: float, x, y, r: float, N: int = 80) -> SeriesResult:
    """Truncated ``sum_{n <= N} P_n(x, y) r^n`` with a bound on the omitted tail.

    ``x`` may hold several points (shape ``(..., 2)``); ``value`` then has
    the matching shape.
    """
    if not (0 <= r < 1):
        raise InvalidParameter("need 0 <= r < 1")
    x, y = np.broadcast_arrays(_unit(x), _unit(y, "y"))
    ax, bx = _basis_tables(k, lam, N, x)
    ay, by = _basis_tables(k, lam, N, y)
    h1, h2 = _norm_tables(k, float(lam), N)
    shape = (-1,) + (1,) * (ax.ndim - 1)
    coef = r ** np.arange(N + 1)
    terms = (ax * ay / h1.reshape(shape) + bx * by / h2.reshape(shape)) * coef.reshape(shape)
    value = terms.sum(axis=0)
    return SeriesResult(value[()] if np.ndim(value) else float(value), _kernel_tail(k, float(lam), float(r), N))


def poisson_closed_vertex(k: int, lam: float, p: int, x, r: float):
    """Closed-form Poisson kernel ``P(x, r y_p)`` at the polygon vertex ``y_p``."""
    if not (0 <= r < 1):
        raise InvalidParameter("need 0 <= r < 1")
    if not (0 <= p <= 2 * k - 1):
        raise InvalidParameter(f"vertex index p={p} outside [0, {2 * k - 1}]")
    x = _unit(x)
    y = vertex(k, p).point
    first = 1 - 2 * r * (y[0] * x[..., 0] + y[1] * x[..., 1]) + r * r
    second = 1 - 2 * (-1) ** p * r**k * classical.chebyshev("T", k, x[..., 0]) + r ** (2 * k)
    return ((1 - r * r) / (first * second**lam))[()]


def poisson_profile(k: int, lam: float, r: float):
    """Profile ``f(t) = (1 - r^2)(1 - 2 r t + r^2)^{-(k lam + 1)}`` whose intertwined ridge is the kernel."""
    a = k * lam + 1

    def f(t):
        return (1 - r * r) * (1 - 2 * r * np.asarray(t) + r * r) ** (-a)

    return f


def gegenbauer_poly(n: int, lam: float) -> Polynomial:
    """``C_n^lam`` as a monomial-basis :class:`Polynomial` via its recurrence."""
    prev, cur = Polynomial([1.0]), Polynomial([0.0, 2 * lam])
    if n == 0:
        return prev
    t = Polynomial([0.0, 1.0])
    for m in range(1, n):
        prev, cur = cur, (2 * (m + lam) * t * cur - (m + 2 * lam - 1) * prev) / (m + 1)
    return cur


def zonal_identity_check(k: int, lam: float, n: int, p: int, x) -> tuple[float, float]:
    """Both sides of ``P_n(x, y_p) = (n + k lam)/(k lam) V[C_n^{k lam}(<., y_p>)](x)``."""
    if lam <= 0:
        raise InvalidParameter("the zonal identity needs lam > 0")
    x = _unit(x)
    y = vertex(k, p).point
    lhs = reproducing_kernel_n(n, k, lam, x, y)
    F = ridge(k, p, gegenbauer_poly(n, k * lam))
    rhs = (n + k * lam) / (k * lam) * float(intertwine_ridge_exact(F, lam)(x))
    return lhs, rhs


# ---------------------------------------------------------------------------
# two-parameter basis on I_{2k}
# ---------------------------------------------------------------------------

READINGS = ("m-shift", "n-shift")


def two_param_basis(n: int, i: int, k: int, lam: float, mu: float, theta,
                    reading: str = "m-shift"):
    """Generalised-Gegenbauer basis of the h-harmonics of ``I_{2k}`` on the circle.

    The weight is ``|sin k th|^{2 lam} |cos k th|^{2 mu}``.  With ``n = m k + j``,
    ``s = cos k th`` and ``a`` the leading coefficient,

        i = 1:  a cos(j th) C_m^{(lam, mu)}(s) - sin(j th) sin(k th) C_{m-1}^{(lam+1, mu)}(s)
        i = 2:  a sin(j th) C_m^{(lam, mu)}(s) + cos(j th) sin(k th) C_{m-1}^{(lam+1, mu)}(s)

    ``reading="m-shift"`` uses ``a = (m + 2 lam + delta_m) / (2 lam + 2 mu)``
    with ``delta_m = 2 mu`` for even ``m`` and ``0`` for odd ``m``; this gives
    an orthogonal basis for every ``k``.  ``reading="n-shift"`` uses
    ``a = (n + 2 lam) / (2 lam + 2 mu)`` and a minus sign in both lines; it is
    only defined for odd ``k`` (even ``k`` raises
    :class:`InconclusiveConvention`) and is orthogonal only when ``k = 1``.
    """
    if reading not in READINGS:
        raise InvalidParameter(f"reading must be one of {READINGS}")
    if i not in (1, 2) or n < 0 or (i == 2 and n == 0) or lam <= 0 or mu < 0:
        raise InvalidParameter("need i in {1, 2}, n >= i - 1, lam > 0, mu >= 0")
    theta = np.asarray(theta, dtype=float)
    m, j = divmod(n, k)
    if reading == "n-shift":
        if k % 2 == 0:
            raise InconclusiveConvention("the n-shift reading is undetermined for even k")
        a, sign = (n + 2 * lam) / (2 * lam + 2 * mu), -1.0
    else:
        a, sign = (m + 2 * lam + (2 * mu if m % 2 == 0 else 0.0)) / (2 * lam + 2 * mu), 1.0
    s = np.cos(k * theta)
    lead = a * classical.generalized_gegenbauer(m, lam, mu, s)
    tail = np.sin(k * theta) * classical.generalized_gegenbauer(m - 1, lam + 1, mu, s)
    if i == 1:
        return (np.cos(j * theta) * lead - np.sin(j * theta) * tail)[()]
    return (np.sin(j * theta) * lead + sign * np.cos(j * theta) * tail)[()]


def gram_matrix(funcs, rule: quadrature.Rule1D) -> np.ndarray:
    """``G[a, b] = sum_q w_q f_a(theta_q) f_b(theta_q)`` for functions of ``theta``."""
    V = np.array([np.broadcast_to(f(rule.nodes), rule.nodes.shape) for f in funcs])
    return (V * rule.weights) @ V.T

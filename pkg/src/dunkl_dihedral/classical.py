"""Classical orthogonal polynomials and normalising constants.

Every family is evaluated by its forward three-term recurrence, which is
stable on ``[-1, 1]`` for the parameter ranges used here.  All evaluators
accept scalar or array ``t`` and return index ``-1`` as the zero polynomial,
the convention needed by the sieved bases.

The constants are derived from Beta integrals; each normalised weight in the
package integrates to one with them.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special

from .errors import InvalidParameter

SQRT_PI = math.sqrt(math.pi)


def _as_array(t):
    return np.asarray(t, dtype=float)


# ---------------------------------------------------------------------------
# Chebyshev, Gegenbauer, Jacobi
# ---------------------------------------------------------------------------

def chebyshev(kind: str, n: int, t):
    """Chebyshev ``T_n`` (n >= 0) or ``U_n`` (n >= -1, with ``U_{-1} = 0``)."""
    t = _as_array(t)
    kind = kind.upper()
    if kind not in ("T", "U"):
        raise InvalidParameter(f"unknown Chebyshev kind {kind!r}")
    lowest = 0 if kind == "T" else -1
    if n < lowest:
        raise InvalidParameter(f"Chebyshev {kind}_{n} is undefined")
    if n == -1:
        return np.zeros_like(t)[()]
    prev = np.ones_like(t)
    if n == 0:
        return prev[()]
    cur = t.copy() if kind == "T" else 2 * t
    for _ in range(1, n):
        prev, cur = cur, 2 * t * cur - prev
    return cur[()]


def chebyshev_vw(kind: str, n: int, t):
    """Chebyshev polynomials of the third (``V``) and fourth (``W``) kind.

    ``V_n(cos th) = cos((n + 1/2) th) / cos(th/2)`` and
    ``W_n(cos th) = sin((n + 1/2) th) / sin(th/2)``.
    """
    t = _as_array(t)
    kind = kind.upper()
    if kind not in ("V", "W") or n < 0:
        raise InvalidParameter(f"need kind V or W and n >= 0, got {kind}_{n}")
    prev = np.ones_like(t)
    if n == 0:
        return prev[()]
    cur = 2 * t - 1 if kind == "V" else 2 * t + 1
    for _ in range(1, n):
        prev, cur = cur, 2 * t * cur - prev
    return cur[()]


def gegenbauer_table(N: int, lam: float, t) -> np.ndarray:
    """Rows ``C_0^lam(t) .. C_N^lam(t)`` stacked along axis 0."""
    if lam <= -0.5:
        raise InvalidParameter("Gegenbauer parameter must exceed -1/2")
    t = _as_array(t)
    out = np.empty((N + 1,) + t.shape)
    out[0] = 1.0
    if N >= 1:
        out[1] = 2 * lam * t
    for n in range(1, N):
        out[n + 1] = (2 * (n + lam) * t * out[n] - (n + 2 * lam - 1) * out[n - 1]) / (n + 1)
    return out


def gegenbauer(n: int, lam: float, t):
    """Gegenbauer polynomial ``C_n^lam(t)``; ``C_{-1} = 0``."""
    t = _as_array(t)
    if n < -1:
        raise InvalidParameter("Gegenbauer index must be >= -1")
    if n == -1:
        if lam <= -0.5:
            raise InvalidParameter("Gegenbauer parameter must exceed -1/2")
        return np.zeros_like(t)[()]
    return gegenbauer_table(n, lam, t)[n][()]


def jacobi(n: int, alpha: float, beta: float, t):
    """Jacobi polynomial ``P_n^{(alpha, beta)}(t)`` normalised by ``P_n(1) = (alpha+1)_n / n!``."""
    if alpha <= -1 or beta <= -1:
        raise InvalidParameter("Jacobi parameters must exceed -1")
    if n < 0:
        raise InvalidParameter("Jacobi degree must be >= 0")
    t = _as_array(t)
    a, b = alpha, beta
    prev = np.ones_like(t)
    if n == 0:
        return prev[()]
    cur = (a + 1) + (a + b + 2) * (t - 1) / 2
    for m in range(2, n + 1):
        s = 2 * m + a + b
        c1 = 2 * m * (m + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * t + a * a - b * b)
        c3 = 2 * (m + a - 1) * (m + b - 1) * s
        prev, cur = cur, (c2 * cur - c3 * prev) / c1
    return cur[()]


def generalized_gegenbauer(n: int, lam: float, mu: float, t):
    """Generalised Gegenbauer polynomial ``C_n^{(lam, mu)}``.

    Even and odd degrees are Jacobi polynomials in ``2t^2 - 1``; the family
    is orthogonal for ``|t|^{2 mu} (1 - t^2)^{lam - 1/2}``.
    """
    if lam <= -0.5 or mu < 0:
        raise InvalidParameter("need lam > -1/2 and mu >= 0")
    t = _as_array(t)
    if n == -1:
        return np.zeros_like(t)[()]
    if n < -1:
        raise InvalidParameter("index must be >= -1")
    m, odd = divmod(n, 2)
    s = 2 * t * t - 1
    if odd:
        c = pochhammer(lam + mu, m + 1) / pochhammer(mu + 0.5, m + 1)
        return (c * t * jacobi(m, lam - 0.5, mu + 0.5, s))[()]
    c = pochhammer(lam + mu, m) / pochhammer(mu + 0.5, m)
    return (c * jacobi(m, lam - 0.5, mu - 0.5, s))[()]


# ---------------------------------------------------------------------------
# Gamma-type utilities
# ---------------------------------------------------------------------------

def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``(a)_n``."""
    if n == 0:
        return 1.0
    return float(special.poch(a, n))


def log_gamma(x: float) -> float:
    return math.lgamma(x)


def a_lambda_k(k: int, lam: float) -> float:
    """Normaliser of ``u_0^lam prod u_i^(lam-1)`` on the simplex ``T^{k-1}``.

    Equal to ``Gamma(k lam + 1) / (lam Gamma(lam)^k)``, the reciprocal of
    :func:`simplex_mass`.
    """
    if lam <= 0:
        raise InvalidParameter("a_lambda_k needs lam > 0")
    return math.exp(math.lgamma(k * lam + 1) - math.log(lam) - k * math.lgamma(lam))


def simplex_mass(k: int, lam: float) -> float:
    """Unnormalised mass ``lam Gamma(lam)^k / Gamma(k lam + 1)`` of the Dirichlet weight."""
    if lam <= 0:
        raise InvalidParameter("simplex_mass needs lam > 0")
    return 1.0 / a_lambda_k(k, lam)


def circle_mass(lam: float) -> float:
    """``int_0^{2 pi} |sin k theta|^{2 lam} d theta``; independent of ``k``."""
    return 2 * SQRT_PI * math.exp(math.lgamma(lam + 0.5) - math.lgamma(lam + 1))


def c_circle(lam: float) -> float:
    """Constant making ``|sin k theta|^{2 lam} d theta`` a probability on ``[0, 2 pi]``."""
    return 1.0 / circle_mass(lam)


def c_circle_two(lam: float, mu: float) -> float:
    """Constant for ``|sin k theta|^{2 lam} |cos k theta|^{2 mu}`` on ``[0, 2 pi]``."""
    return math.exp(math.lgamma(lam + mu + 1) - math.lgamma(lam + 0.5) - math.lgamma(mu + 0.5)) / 2


def c_interval(lam: float) -> float:
    """Constant normalising ``(1 - t^2)^{lam - 1}`` on ``[-1, 1]``."""
    if lam <= 0:
        raise InvalidParameter("c_interval needs lam > 0")
    return math.exp(math.lgamma(lam + 0.5) - math.lgamma(lam)) / SQRT_PI


def mass_minus(k: int, lam: float) -> float:
    """``int |U_{k-1}|^{2 lam} (1 - t^2)^{lam - 1/2} dt`` (independent of ``k``)."""
    return circle_mass(lam) / 2


def mass_plus(k: int, lam: float) -> float:
    """``int |U_{k-1}|^{2 lam} (1 - t^2)^{lam + 1/2} dt``."""
    if k == 1:
        return SQRT_PI * math.exp(math.lgamma(lam + 1.5) - math.lgamma(lam + 2))
    return mass_minus(k, lam) / 2


def mass_modified(k: int, lam: float) -> float:
    """Mass of ``(1 +- t) |U_{k-1}|^{2 lam} (1 - t^2)^{lam - 1/2}``; the odd part integrates to 0."""
    return mass_minus(k, lam)


def b_minus(k: int, lam: float) -> float:
    return 1.0 / mass_minus(k, lam)


def b_plus(k: int, lam: float) -> float:
    return 1.0 / mass_plus(k, lam)


_CONSTANTS = {
    "a_lambda_k": lambda p: a_lambda_k(p["k"], p["lam"]),
    "simplex_mass": lambda p: simplex_mass(p["k"], p["lam"]),
    "c_circle": lambda p: c_circle(p["lam"]),
    "circle_mass": lambda p: circle_mass(p["lam"]),
    "c_interval": lambda p: c_interval(p["lam"]),
    "b_minus": lambda p: b_minus(p.get("k", 1), p["lam"]),
    "b_plus": lambda p: b_plus(p.get("k", 1), p["lam"]),
    "pochhammer": lambda p: pochhammer(p["a"], p["n"]),
    "log_gamma": lambda p: log_gamma(p["x"]),
}


def constants(name: str, **params) -> float:
    """Look up a named constant, e.g. ``constants("a_lambda_k", k=3, lam=1.0)``."""
    try:
        fn = _CONSTANTS[name]
    except KeyError:
        raise InvalidParameter(f"unknown constant {name!r}") from None
    return fn(params)

"""Sieved Gegenbauer polynomials and the two (1 +- t)-modified families.

Weights on ``[-1, 1]`` (``k >= 1``, ``lam >= 0``)::

    minus      |U_{k-1}(t)|^{2 lam} (1 - t^2)^{lam - 1/2}
    plus       |U_{k-1}(t)|^{2 lam} (1 - t^2)^{lam + 1/2}
    mod-plus   (1 + t) |U_{k-1}(t)|^{2 lam} (1 - t^2)^{lam - 1/2}
    mod-minus  (1 - t) |U_{k-1}(t)|^{2 lam} (1 - t^2)^{lam - 1/2}

Every weight is taken normalised to unit mass.  With ``n = m k + j``,
``0 <= j <= k - 1``, ``t = cos(theta)`` and ``C_m = C_m^{lam+1}(cos k theta)``
the orthogonal polynomials are

    minus      T_j(t) C_m - T_{k-j}(t) C_{m-1}
    plus       U_j(t) C_m + U_{k-j-2}(t) C_{m-1}
    mod-plus   V_j(t) C_m - V_{k-j-1}(t) C_{m-1}
    mod-minus  (-1)^n q_n(-t), q_n the mod-plus polynomial

The mod-plus family is *defined* by doubling: the odd members of the
order-``2k`` minus family satisfy ``p_{2n+1}(cos phi) = cos(phi) q_n(cos 2 phi)``.
The Chebyshev ``V`` form above is that quotient carried out exactly.  The
weight attached to the doubled family is decided numerically the first time
a modified family is built (see :func:`resolve_modified_convention`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from functools import lru_cache

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial

from . import classical, quadrature
from .classical import chebyshev, chebyshev_vw, gegenbauer, gegenbauer_table
from .errors import InconclusiveConvention, InvalidParameter

TAGS = ("minus", "plus", "mod-plus", "mod-minus")


@dataclass(frozen=True)
class WeightFamily:
    tag: str
    k: int
    lam: float

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InvalidParameter(f"family tag must be one of {TAGS}")
        if int(self.k) != self.k or self.k < 1:
            raise InvalidParameter("k must be a positive integer")
        if self.lam < 0:
            raise InvalidParameter("lam must be nonnegative")
        if self.tag.startswith("mod"):
            # fixes the weight orientation once per (k, lam)
            resolve_modified_convention(self.k, float(self.lam))

    @property
    def circle_extra(self) -> str:
        """Extra factor of the circle rule that realises this weight under ``t = cos theta``."""
        if self.tag == "minus":
            return "none"
        if self.tag == "plus":
            return "sin2"
        conv = resolve_modified_convention(self.k, float(self.lam))
        plus_extra = conv.doubling_extra
        if self.tag == "mod-plus":
            return plus_extra
        return "1-cos" if plus_extra == "1+cos" else "1+cos"

    def density(self, t):
        """Unnormalised weight on ``[-1, 1]``."""
        t = np.asarray(t, dtype=float)
        u = np.abs(chebyshev("U", self.k - 1, t)) ** (2 * self.lam)
        s = (1 - t * t)
        if self.tag == "minus":
            return u * s ** (self.lam - 0.5)
        if self.tag == "plus":
            return u * s ** (self.lam + 0.5)
        extra = 1 + t if self.circle_extra == "1+cos" else 1 - t
        return extra * u * s ** (self.lam - 0.5)

    @property
    def mass(self) -> float:
        if self.tag == "minus":
            return classical.mass_minus(self.k, self.lam)
        if self.tag == "plus":
            return classical.mass_plus(self.k, self.lam)
        return classical.mass_modified(self.k, self.lam)

    def rule(self, order: int = 40) -> quadrature.Rule1D:
        """Normalised rule in the variable ``t`` (nodes ``cos theta`` over ``[0, 2 pi]``)."""
        r = quadrature.circle_rule(self.k, self.lam, self.circle_extra, order)
        return quadrature.Rule1D(np.cos(r.nodes), r.weights, None, f"{self.tag} k={self.k}")


def family(tag: str, k: int, lam: float) -> WeightFamily:
    return WeightFamily(tag, int(k), float(lam))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1 + 1e-12):
        raise InvalidParameter("sieved polynomials are evaluated on [-1, 1]")
    return np.clip(t, -1.0, 1.0)


def _raw_table(tag: str, k: int, lam: float, N: int, t: np.ndarray) -> np.ndarray:
    """Rows ``p_0 .. p_N`` of one family at ``t`` (no range check)."""
    if tag == "mod-minus":
        tab = _raw_table("mod-plus", k, lam, N, -t)
        return tab * ((-1.0) ** np.arange(N + 1)).reshape((-1,) + (1,) * t.ndim)
    M = N // k + 1
    C = gegenbauer_table(M, lam + 1, chebyshev("T", k, t))
    zero = np.zeros_like(t)

    def Cm(m):
        return C[m] if m >= 0 else zero

    if tag == "minus":
        A = [chebyshev("T", j, t) for j in range(k + 1)]
        first = lambda j: A[j]
        second = lambda j: -A[k - j]
    elif tag == "plus":
        A = [chebyshev("U", j, t) for j in range(-1, k)]  # A[i] = U_{i-1}
        first = lambda j: A[j + 1]
        second = lambda j: A[k - j - 1]
    elif tag == "mod-plus":
        A = [chebyshev_vw("V", j, t) for j in range(k)]
        first = lambda j: A[j]
        second = lambda j: -A[k - j - 1]
    else:
        raise InvalidParameter(f"unknown family {tag!r}")
    out = np.empty((N + 1,) + t.shape)
    for n in range(N + 1):
        m, j = divmod(n, k)
        out[n] = first(j) * Cm(m) + second(j) * Cm(m - 1)
    return out


def sieved_table(fam: WeightFamily, N: int, t) -> np.ndarray:
    """All of ``p_0(t), ..., p_N(t)`` for ``fam`` stacked along axis 0."""
    t = _check_t(t)
    return _raw_table(fam.tag, fam.k, float(fam.lam), N, t)


def sieved_eval(fam: WeightFamily, n: int, t):
    """``p_n(fam; t)`` for ``|t| <= 1``."""
    if n < 0:
        raise InvalidParameter("degree must be nonnegative")
    return sieved_table(fam, n, t)[n][()]


def sieved_poly(fam: WeightFamily, n: int) -> Polynomial:
    """``p_n(fam)`` as a :class:`numpy.polynomial.Polynomial` in ``t``.

    The recurrence values at ``n + 1`` Chebyshev points determine the
    polynomial exactly; interpolating in the Chebyshev basis keeps the
    conversion well conditioned before switching to monomials.
    """
    if n < 0:
        raise InvalidParameter("degree must be nonnegative")
    cheb = Chebyshev.interpolate(lambda t: sieved_table(fam, n, t)[n], n)
    return cheb.convert(kind=Polynomial)


def _poch_over_factorial(a: float, m: int) -> float:
    """``(a)_m / m!`` through log-gamma so that large ``m`` does not overflow."""
    return math.exp(math.lgamma(a + m) - math.lgamma(a) - math.lgamma(m + 1))


def sieved_norm(fam: WeightFamily, n: int) -> float:
    """``h_n = int p_n^2 w / int w``."""
    if n < 0:
        raise InvalidParameter("degree must be nonnegative")
    k, lam = fam.k, float(fam.lam)
    m, j = divmod(n, k)
    base = _poch_over_factorial(2 * lam + 1, m)
    if fam.tag == "minus":
        if j == 0:
            if m == 0:
                return 1.0
            return (m + 2 * lam) / (m + lam) * base / 2
        return base / 2
    if fam.tag == "plus":
        h = base / 2
        if j == k - 1:
            h *= (2 * lam + m + 1) / (lam + m + 1)
        # the closed forms above are relative to the minus-family mass
        return h * classical.mass_minus(k, lam) / classical.mass_plus(k, lam)
    return base


def printed_plus_norm(k: int, lam: float, n: int) -> float:
    """Plus-family norm as a ratio to the minus-family mass (no mass correction)."""
    m, j = divmod(n, k)
    h = _poch_over_factorial(2 * lam + 1, m) / 2
    if j == k - 1:
        h *= (2 * lam + m + 1) / (lam + m + 1)
    return h


def doubling_quotient(k: int, lam: float, n: int, t):
    """``p_{2n+1}(minus, order 2k; x) / x`` at ``x = sqrt((1 + t)/2)``, computed numerically."""
    t = np.asarray(t, dtype=float)
    x = np.sqrt((1 + t) / 2)
    p = _raw_table("minus", 2 * k, lam, 2 * n + 1, x)[2 * n + 1]
    return p / x


# ---------------------------------------------------------------------------
# modified-family convention
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModifiedConvention:
    k: int
    lam: float
    doubling_extra: str          # "1+cos" or "1-cos": weight factor of the doubled family
    residual_1plus: float        # orthogonality residual against (1 + t)
    residual_1minus: float       # orthogonality residual against (1 - t)
    printed_label_factor: str    # factor attached to the family's label as printed
    closed_form_printed: float   # deviation of the printed V-form index choice
    closed_form_derived: float   # deviation of the corrected index choice
    mirror_printed: float        # deviation of the printed mirrored closed form
    mirror_derived: float

    @property
    def label_inverted(self) -> bool:
        return (self.doubling_extra == "1+cos") != (self.printed_label_factor == "1+t")

    def as_dict(self):
        d = asdict(self)
        d["label_inverted"] = self.label_inverted
        return d


def _orthogonality_residual(values: np.ndarray, weights: np.ndarray) -> float:
    G = (values * weights) @ values.T
    d = np.sqrt(np.abs(np.diag(G)))
    G = G / np.outer(d, d)
    return float(np.max(np.abs(G - np.diag(np.diag(G)))))


def _closed_variants(k, lam, n, theta, shift):
    """Half-angle forms of the modified family with frequency ``k - j + shift``.

    The cosine form is compared with ``q_n(t)`` and the sine form, which
    carries a factor ``(-1)^n``, with ``q_n(-t)``.
    """
    m, j = divmod(n, k)
    Ck = np.cos(k * theta)
    c1 = gegenbauer(m, lam + 1, Ck)
    c0 = gegenbauer(m - 1, lam + 1, Ck) if m >= 1 else 0.0
    cosform = (np.cos((j + 0.5) * theta) * c1 - np.cos((k - j + shift) * theta) * c0) / np.cos(theta / 2)
    sinform = (-1) ** n * (np.sin((j + 0.5) * theta) * c1 + np.sin((k - j + shift) * theta) * c0) / np.sin(theta / 2)
    return cosform, sinform


@lru_cache(maxsize=256)
def resolve_modified_convention(k: int, lam: float, degree: int = 6, order: int = 40) -> ModifiedConvention:
    """Decide which of ``(1 +- t)`` makes the doubled family orthogonal.

    The doubled polynomials are evaluated by :func:`doubling_quotient` on a
    circle rule and their Gram matrix is formed against both candidate
    weights.  Exactly one residual must be below 1e-9 and the other above
    1e-3; anything else raises :class:`InconclusiveConvention`.
    """
    base = quadrature.circle_rule(k, lam, "none", order)
    t = np.cos(base.nodes)
    vals = np.array([doubling_quotient(k, lam, n, t) for n in range(degree + 1)])
    res = {}
    for extra, fac in (("1+cos", 1 + t), ("1-cos", 1 - t)):
        res[extra] = _orthogonality_residual(vals, base.weights * fac)
    good = [e for e, r in res.items() if r < 1e-9]
    bad = [e for e, r in res.items() if r > 1e-3]
    if len(good) != 1 or len(bad) != 1:
        raise InconclusiveConvention(f"k={k} lam={lam}: residuals {res}")
    # compare the half-angle closed forms with the constructive definition
    rng = np.random.default_rng(12345)
    theta = rng.uniform(0.05, np.pi - 0.05, 32)
    tt = np.cos(theta)
    dev = {}
    for shift, name in ((0.5, "printed"), (-0.5, "derived")):
        e_cos = e_sin = 0.0
        for n in range(degree + 1):
            cform, sform = _closed_variants(k, lam, n, theta, shift)
            q = doubling_quotient(k, lam, n, tt)
            qm = doubling_quotient(k, lam, n, -tt)
            e_cos = max(e_cos, float(np.max(np.abs(cform - q))))
            e_sin = max(e_sin, float(np.max(np.abs(sform - qm))))
        dev[name] = (e_cos, e_sin)
    return ModifiedConvention(
        k=k, lam=lam, doubling_extra=good[0],
        residual_1plus=res["1+cos"], residual_1minus=res["1-cos"],
        printed_label_factor="1-t",
        closed_form_printed=dev["printed"][0], closed_form_derived=dev["derived"][0],
        mirror_printed=dev["printed"][1], mirror_derived=dev["derived"][1],
    )


def modified_basis(sign: int, k: int, lam: float):
    """The modified family: ``sign=+1`` is the doubled family, ``-1`` its mirror."""
    if sign not in (1, -1):
        raise InvalidParameter("sign must be +1 or -1")
    return family("mod-plus" if sign == 1 else "mod-minus", k, lam)


# ---------------------------------------------------------------------------
# Poisson kernels
# ---------------------------------------------------------------------------

def vertex_abscissa(fam: WeightFamily, p: int) -> float:
    """Second argument at which the closed kernel of ``fam`` is evaluated."""
    s = math.cos(p * math.pi / fam.k)
    return -s if fam.tag == "mod-minus" else s


def _closed_modified(k, lam, p, t, r):
    S = math.cos(p * math.pi / k)
    B = 1 - 2 * r * S * t + r * r
    den = (B * B - 4 * r * r * (1 - S * S) * (1 - t * t))
    num = (1 - r) * (1 + 2 * r + r * r - 2 * r * (S + t))
    L = (1 - 2 * (-1) ** p * r**k * chebyshev("T", k, t) + r ** (2 * k)) ** lam
    return num / (den * L)


def poisson_closed(fam: WeightFamily, p: int, t, r: float):
    """Closed-form Poisson kernel of ``fam`` at ``(t, vertex_abscissa(fam, p))``."""
    if not (0 <= r < 1):
        raise InvalidParameter("need 0 <= r < 1")
    if not (0 <= p <= 2 * fam.k - 1):
        raise InvalidParameter("vertex index out of range")
    t = _check_t(t)
    k, lam = fam.k, float(fam.lam)
    if fam.tag == "mod-plus":
        return _closed_modified(k, lam, p, t, r)[()]
    if fam.tag == "mod-minus":
        return _closed_modified(k, lam, p, -t, r)[()]
    c, s = math.cos(p * math.pi / k), math.sin(p * math.pi / k)
    B = 1 - 2 * r * c * t + r * r
    den = B * B - 4 * r * r * s * s * (1 - t * t)
    L = (1 - 2 * (-1) ** p * r**k * chebyshev("T", k, t) + r ** (2 * k)) ** lam
    if fam.tag == "minus":
        return ((1 - r * r) * B / (den * L))[()]
    return ((1 - r * r) / (den * L))[()]


def poisson_series_interval(fam: WeightFamily, t, s: float, r: float, N: int):
    """``sum_{n <= N} p_n(t) p_n(s) r^n / h_n`` for scalar ``s``."""
    if not (0 <= r < 1):
        raise InvalidParameter("need 0 <= r < 1")
    t = np.asarray(t, dtype=float)
    P = sieved_table(fam, N, t)
    Q = sieved_table(fam, N, float(s))
    coef = np.array([r**n / sieved_norm(fam, n) for n in range(N + 1)]) * Q
    return np.tensordot(coef, P, axes=1)[()]


def _gegenbauer_at_one(a: float, m: int) -> float:
    """``C_m^a(1) = (2a)_m / m!`` via log-gamma, safe for large ``m``."""
    return math.exp(math.lgamma(2 * a + m) - math.lgamma(2 * a) - math.lgamma(m + 1))


def sup_bound(fam: WeightFamily, n: int) -> float:
    """Upper bound for ``max |p_n|`` on ``[-1, 1]``."""
    k, lam = fam.k, float(fam.lam)
    m, j = divmod(n, k)
    c1 = _gegenbauer_at_one(lam + 1, m)
    c0 = _gegenbauer_at_one(lam + 1, m - 1) if m >= 1 else 0.0
    if fam.tag == "minus":
        return c1 + c0
    if fam.tag == "plus":
        return (j + 1) * c1 + (k - j - 1) * c0
    return (2 * j + 1) * c1 + (2 * k - 2 * j - 1) * c0


def tail_bound(fam: WeightFamily, r: float, N: int, extra_terms: int = 4000) -> float:
    """Bound on the Poisson-series tail ``sum_{n > N}`` from :func:`sup_bound`."""
    if r == 0:
        return 0.0
    total = 0.0
    for n in range(N + 1, N + 1 + extra_terms):
        term = sup_bound(fam, n) ** 2 / sieved_norm(fam, n) * r**n
        total += term
        if n > N + 50 and term < 1e-40 * max(total, 1e-300):
            break
    return total


# ---------------------------------------------------------------------------
# generating functions and connection identities
# ---------------------------------------------------------------------------

def generating_plus(k: int, lam: float, t, r: float, N: int = 200):
    """``sum_n p_n(plus; t) r^n`` against ``1 / ((1 - 2 t r + r^2)(1 - 2 T_k(t) r^k + r^{2k})^lam)``."""
    fam = family("plus", k, lam)
    t = _check_t(t)
    tab = sieved_table(fam, N, t)
    series = np.tensordot(r ** np.arange(N + 1), tab, axes=1)
    closed = 1 / ((1 - 2 * t * r + r * r) * (1 - 2 * chebyshev("T", k, t) * r**k + r ** (2 * k)) ** lam)
    return series[()], closed[()]


def jacobi_generating(which: int, lam: float, t, r: float, N: int = 200):
    """Half-integer Jacobi generating identities.

    ``which=1``: ``sum c_n P_n^{(lam-1/2, lam+1/2)}(t) r^n = (1 - r)/(1 - 2 r t + r^2)^{lam+1}``;
    ``which=2`` swaps the parameters and has ``1 + r`` in the numerator.  Here
    ``c_n = (2n + 2 lam + 1)(2 lam + 1)_n / ((2 lam + 1)(lam + 3/2)_n)``.
    """
    t = np.asarray(t, dtype=float)
    a, b = (lam - 0.5, lam + 0.5) if which == 1 else (lam + 0.5, lam - 0.5)
    total = np.zeros_like(t)
    for n in range(N + 1):
        log_ratio = (math.lgamma(2 * lam + 1 + n) - math.lgamma(2 * lam + 1)
                     - math.lgamma(lam + 1.5 + n) + math.lgamma(lam + 1.5))
        c = (2 * n + 2 * lam + 1) / (2 * lam + 1) * math.exp(log_ratio)
        total = total + c * classical.jacobi(n, a, b, t) * r**n
    num = (1 - r) if which == 1 else (1 + r)
    return total[()], (num / (1 - 2 * r * t + r * r) ** (lam + 1))[()]


def connection_sum(kind: str, k: int, lam: float, m: int, j: int, theta, sign: int = +1):
    """``sum_{l=0}^m X_{lk+j}(cos th) C_{m-l}^lam(cos k th)`` and its two-term closed form.

    ``kind="T"`` compares with ``cos(j th) C_m^{lam+1} - cos((k-j) th) C_{m-1}^{lam+1}``;
    ``kind="U"`` with ``U_j C_m^{lam+1} + sign * U_{k-j-2} C_{m-1}^{lam+1}``.
    """
    theta = np.asarray(theta, dtype=float)
    t, ck = np.cos(theta), np.cos(k * theta)
    kind = kind.upper()
    C = gegenbauer_table(m, lam, ck)
    C1 = gegenbauer_table(m, lam + 1, ck)
    if kind == "T":
        lhs = sum(chebyshev("T", l * k + j, t) * C[m - l] for l in range(m + 1))
        rhs = np.cos(j * theta) * C1[m] - np.cos((k - j) * theta) * (C1[m - 1] if m >= 1 else 0)
    elif kind == "U":
        lhs = sum(chebyshev("U", l * k + j, t) * C[m - l] for l in range(m + 1))
        low = chebyshev("U", k - j - 2, t) if k - j - 2 >= -1 else -chebyshev("U", j - k, t)
        rhs = chebyshev("U", j, t) * C1[m] + sign * low * (C1[m - 1] if m >= 1 else 0)
    else:
        raise InvalidParameter("kind must be T or U")
    return lhs[()], rhs[()]


def gegenbauer_contiguous(m: int, lam: float, t):
    """Both sides of ``C_m^{lam+1} - t C_{m-1}^{lam+1} = ((m + 2 lam)/(2 lam)) C_m^lam``."""
    t = np.asarray(t, dtype=float)
    lhs = gegenbauer(m, lam + 1, t) - t * gegenbauer(m - 1, lam + 1, t)
    rhs = (m + 2 * lam) / (2 * lam) * gegenbauer(m, lam, t)
    return lhs[()], rhs[()]


def doubling_relation(k: int, lam: float, n: int, theta):
    """Even half of the doubling: ``p_{2n}(order 2k; cos th)`` versus ``p_n(order k; cos 2 th)``."""
    theta = np.asarray(theta, dtype=float)
    lhs = _raw_table("minus", 2 * k, lam, 2 * n, np.cos(theta))[2 * n]
    rhs = _raw_table("minus", k, lam, n, np.cos(2 * theta))[n]
    return lhs[()], rhs[()]


def doubling_relation_odd(k: int, lam: float, n: int, theta):
    """Odd half: ``p_{2n+1}(order 2k; cos th)`` versus ``cos th * q_n(cos 2 th)``."""
    theta = np.asarray(theta, dtype=float)
    lhs = _raw_table("minus", 2 * k, lam, 2 * n + 1, np.cos(theta))[2 * n + 1]
    rhs = np.cos(theta) * _raw_table("mod-plus", k, lam, n, np.cos(2 * theta))[n]
    return lhs[()], rhs[()]


# ---------------------------------------------------------------------------
# product formulas
# ---------------------------------------------------------------------------

def _simplex_linear(k, theta, points):
    ang = theta - 2 * np.arange(k) * np.pi / k
    return points @ np.cos(ang)


def product_formula(kind: str, **params):
    """Two-path evaluation of a product formula; returns ``(lhs, rhs)``.

    ``k-gegen``      k, lam, n, theta:
        ``p_n(cos th) p_n(1) / h_n = ((n + k lam)/(k lam)) E[C_n^{k lam}(sum cos(th - 2 j pi/k) u_j)]``
    ``k-gegen-sub``  k, lam, m, theta:
        ``C_m^lam(cos k th) = E[C_{km}^{k lam}(sum cos(th - 2 j pi/k) u_j)]``
    ``gg0``          lam, mu, m, t:
        ``C_m^{(lam,mu)}(t) = c_mu int C_m^{lam+mu}(t u)(1+u)(1-u^2)^{mu-1} du``
    ``gg``           lam, mu, m, theta, phi, prefactor (default False):
        ``C_m(cos th) C_m(cos ph) / C_m(1)`` against the double integral of
        ``C_m^{lam+mu}(t cos th cos ph + s sin th sin ph)``; ``prefactor=True``
        multiplies the integral by ``(m + lam + mu)/(lam + mu)``.

    Expectations are under ``Dirichlet(lam+1, lam, ..., lam)``.
    """
    order = params.get("order")
    if kind in ("k-gegen", "k-gegen-sub"):
        k, lam, theta = params["k"], float(params["lam"]), float(params["theta"])
        if lam <= 0:
            raise InvalidParameter("product formulas need lam > 0")
        rule = quadrature.dirichlet_rule(k, lam, order)
        z = _simplex_linear(k, theta, rule.points)
        if kind == "k-gegen":
            n = params["n"]
            fam = family("minus", k, lam)
            lhs = sieved_eval(fam, n, math.cos(theta)) * sieved_eval(fam, n, 1.0) / sieved_norm(fam, n)
            rhs = (n + k * lam) / (k * lam) * (gegenbauer(n, k * lam, z) @ rule.weights)
        else:
            m = params["m"]
            lhs = gegenbauer(m, lam, math.cos(k * theta))
            rhs = gegenbauer(k * m, k * lam, z) @ rule.weights
        return float(lhs), float(rhs)
    if kind in ("gg0", "gg"):
        lam, mu, m = float(params["lam"]), float(params["mu"]), params["m"]
        if lam <= 0 or mu <= 0:
            raise InvalidParameter("need lam, mu > 0")
        n_gauss = order or 60
        ru = quadrature.gauss_jacobi(n_gauss, mu - 1, mu - 1)
        wu = ru.weights * (1 + ru.nodes) / ru.weights.sum()
        if kind == "gg0":
            t = float(params["t"])
            lhs = classical.generalized_gegenbauer(m, lam, mu, t)
            rhs = gegenbauer(m, lam + mu, t * ru.nodes) @ wu
            return float(lhs), float(rhs)
        theta, phi = float(params["theta"]), float(params["phi"])
        rs = quadrature.gauss_jacobi(n_gauss, lam - 1, lam - 1)
        ws = rs.weights / rs.weights.sum()
        gg = classical.generalized_gegenbauer
        lhs = gg(m, lam, mu, math.cos(theta)) * gg(m, lam, mu, math.cos(phi)) / gg(m, lam, mu, 1.0)
        T, S = np.meshgrid(ru.nodes, rs.nodes, indexing="ij")
        arg = T * math.cos(theta) * math.cos(phi) + S * math.sin(theta) * math.sin(phi)
        rhs = wu @ gegenbauer(m, lam + mu, arg) @ ws
        if params.get("prefactor", False):
            rhs *= (m + lam + mu) / (lam + mu)
        return float(lhs), float(rhs)
    raise InvalidParameter(f"unknown product formula {kind!r}")

"""Dunkl operators for I_k and the intertwining operator on ridge functions.

For a ridge function ``F_p(x) = f(<x, y_p>)`` with ``y_p`` the polygon vertex
at angle ``p pi / k``, the intertwining operator is an average over the
simplex,

    V F_p(x) = E[ f( sum_j u_j <x, e(a_j)> ) ],   a_j = (p + 2 j) pi / k,

where ``e(a) = (cos a, sin a)`` and ``u`` is ``Dirichlet(lam+1, lam, ..., lam)``
with ``u_0`` carrying the larger parameter.  For polynomial profiles the
expectation is computed exactly from the moment generating product

    E[(sum u_j L_j)^n] = n! / (k lam + 1)_n * [z^n] prod_j (1 - z L_j)^{-alpha_j},

so ``V F_p`` comes out as a :class:`BiPoly`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, NamedTuple, Union

import numpy as np
from numpy.polynomial import Polynomial

from . import quadrature
from .dihedral import DihedralGroup, make_group
from .errors import InvalidParameter
from .polyring import BiPoly, compose_profile

Profile = Union[Polynomial, Callable[[np.ndarray], np.ndarray]]


# ---------------------------------------------------------------------------
# ridge functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RidgeFunction:
    """``F_p(x) = f(cos(p pi/k) x_1 + sin(p pi/k) x_2)`` on the group ``I_k``."""

    profile: Profile
    p: int
    group: DihedralGroup

    def __post_init__(self):
        if not (0 <= self.p <= 2 * self.group.k - 1):
            raise InvalidParameter(f"vertex index p={self.p} outside [0, {2 * self.group.k - 1}]")

    @property
    def is_polynomial(self) -> bool:
        return isinstance(self.profile, Polynomial)

    @property
    def direction(self) -> np.ndarray:
        a = self.p * np.pi / self.group.k
        return np.array([np.cos(a), np.sin(a)])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.profile(x @ self.direction)

    def as_bipoly(self) -> BiPoly:
        if not self.is_polynomial:
            raise InvalidParameter("only polynomial profiles have an exact representation")
        return compose_profile(self.profile, self.direction)

    def derivative(self) -> "RidgeFunction":
        """Profile ``f'``; note ``d/dx_i F_p = y_{p,i} * (f' ridge)``."""
        return RidgeFunction(self.profile.deriv(), self.p, self.group)


def ridge(k: int, p: int, profile: Profile) -> RidgeFunction:
    return RidgeFunction(profile, p, make_group(k))


# ---------------------------------------------------------------------------
# Dunkl operators
# ---------------------------------------------------------------------------

def dunkl_apply_weighted(g: DihedralGroup, axis: int, kappas, f: BiPoly) -> BiPoly:
    """``D_i f = d_i f + sum_j kappa_j v_{j,i} (f - f o sigma_j) / <x, v_j>``."""
    if axis not in (1, 2):
        raise InvalidParameter("axis must be 1 or 2")
    out = f.partial(axis)
    scale = f.max_abs()
    for j in range(g.k):
        kap = kappas[j]
        vi = g.roots[j, axis - 1]
        if kap == 0 or vi == 0 or f.is_zero():
            continue
        num = f - f.compose_linear(g.reflections[j])
        q = num.divide_by_root_form(g.roots[j], scale=scale)
        out = out + q.scale(kap * vi)
    return out


def dunkl_apply(g: DihedralGroup, axis: int, lam: float, f: BiPoly) -> BiPoly:
    """Dunkl operator of ``I_k`` with the single multiplicity ``lam``."""
    if lam < 0:
        raise InvalidParameter("multiplicity must be nonnegative")
    return dunkl_apply_weighted(g, axis, [lam] * g.k, f)


@dataclass(frozen=True)
class MultiplicityTwo:
    """Multiplicities of the two root classes of ``I_{2k}``: even roots ``lam``, odd ``mu``."""

    lam: float
    mu: float

    def __post_init__(self):
        if self.lam < 0 or self.mu < 0:
            raise InvalidParameter("multiplicities must be nonnegative")


def dunkl_apply_two_param(g: DihedralGroup, axis: int, mult: MultiplicityTwo, f: BiPoly) -> BiPoly:
    """Dunkl operator of ``I_{2k}`` with one multiplicity per conjugacy class."""
    if g.k % 2:
        raise InvalidParameter("two-parameter operator needs a group of even order k")
    kappas = [mult.lam if j % 2 == 0 else mult.mu for j in range(g.k)]
    return dunkl_apply_weighted(g, axis, kappas, f)


def h_laplacian(g: DihedralGroup, lam: float, f: BiPoly) -> BiPoly:
    """``Delta_h f = D_1^2 f + D_2^2 f``."""
    d1 = dunkl_apply(g, 1, lam, dunkl_apply(g, 1, lam, f))
    d2 = dunkl_apply(g, 2, lam, dunkl_apply(g, 2, lam, f))
    return d1 + d2


# ---------------------------------------------------------------------------
# intertwining operator, exact path
# ---------------------------------------------------------------------------

def ridge_angles(k: int, p: int) -> np.ndarray:
    """The angles ``(p + 2 j) pi / k`` of the linear forms averaged by ``V``."""
    return (p + 2 * np.arange(k)) * np.pi / k


def _homog_power_vec(c, s, m):
    """``(c x1 + s x2)^m`` as coefficients of ``x1^a x2^(m-a)``, ``a = 0..m``."""
    a = np.arange(m + 1)
    binom = np.array([comb(m, int(i)) for i in a], dtype=float)
    return binom * c**a * s ** (m - a)


@lru_cache(maxsize=512)
def ridge_moment_polys(k: int, p: int, lam: float, N: int) -> tuple:
    """Homogeneous polynomials ``E[(sum_j u_j <x, e(a_j)>)^n]`` for ``n = 0..N``.

    Returned as coefficient vectors (power of ``x1`` ascending).
    """
    angles = ridge_angles(k, p)
    alphas = [lam + 1] + [lam] * (k - 1)
    # series[n] is the degree-n homogeneous coefficient vector of the product
    series = [np.ones(1)] + [np.zeros(n + 1) for n in range(1, N + 1)]
    for j in range(k):
        c, s = np.cos(angles[j]), np.sin(angles[j])
        factor = []
        coef = 1.0
        for m in range(N + 1):
            factor.append(coef * _homog_power_vec(c, s, m))
            coef *= (alphas[j] + m) / (m + 1)
        new = [np.zeros(n + 1) for n in range(N + 1)]
        for a in range(N + 1):
            if not series[a].any():
                continue
            for b in range(N + 1 - a):
                new[a + b] += np.convolve(series[a], factor[b])
        series = new
    out = []
    scale = 1.0
    for n in range(N + 1):
        if n > 0:
            scale *= n / (k * lam + n)
        vec = scale * series[n]
        vec.setflags(write=False)
        out.append(vec)
    return tuple(out)


def intertwine_ridge_exact(F: RidgeFunction, lam: float) -> BiPoly:
    """``V_lam F_p`` as an exact polynomial for a polynomial profile."""
    if not F.is_polynomial:
        raise InvalidParameter("exact path needs a polynomial profile")
    if lam < 0:
        raise InvalidParameter("multiplicity must be nonnegative")
    if lam == 0:
        return F.as_bipoly()
    coef = F.profile.coef
    N = len(coef) - 1
    moms = ridge_moment_polys(F.group.k, F.p, float(lam), N)
    out = BiPoly()
    for n, a in enumerate(coef):
        if a != 0:
            out = out + BiPoly.from_homogeneous(a * moms[n])
    return out


# ---------------------------------------------------------------------------
# intertwining operator, quadrature and Monte Carlo paths
# ---------------------------------------------------------------------------

class QuadResult(NamedTuple):
    value: float
    stderr: float


def _ridge_linear_values(F: RidgeFunction, x, points: np.ndarray) -> np.ndarray:
    angles = ridge_angles(F.group.k, F.p)
    x = np.asarray(x, dtype=float)
    L = x[0] * np.cos(angles) + x[1] * np.sin(angles)
    return points @ L


def intertwine_ridge_quad(F: RidgeFunction, lam: float, x, method: str = "deterministic",
                          order: int | None = None, samples: int = 1_000_000,
                          rng: np.random.Generator | None = None) -> QuadResult:
    """Evaluate ``V_lam F_p(x)`` by simplex quadrature or Monte Carlo."""
    if lam <= 0:
        if lam == 0:
            return QuadResult(float(F(x)), 0.0)
        raise InvalidParameter("multiplicity must be nonnegative")
    k = F.group.k
    if method == "deterministic":
        rule = quadrature.dirichlet_rule(k, lam, order)
        vals = F.profile(_ridge_linear_values(F, x, rule.points))
        return QuadResult(float(vals @ rule.weights), 0.0)
    if method == "monte-carlo":
        if rng is None:
            raise InvalidParameter("Monte Carlo needs an explicit numpy Generator")
        pts = quadrature.dirichlet_sample(k, lam, rng, samples)
        vals = F.profile(_ridge_linear_values(F, x, pts))
        vals = np.broadcast_to(np.asarray(vals, dtype=float), (samples,))
        return QuadResult(*quadrature.mc_mean(vals))
    raise InvalidParameter(f"unknown method {method!r}")


def intertwine_z2(f: Callable, lam: float, mu: float, x, order: int = 40) -> float:
    """Integral intertwiner of ``I_2 = Z_2 x Z_2``.

    ``V f(x1, x2) = c_lam c_mu int int f(s x1, t x2) (1+s)(1-s^2)^{mu-1}
    (1+t)(1-t^2)^{lam-1} ds dt``; ``mu`` belongs to the reflection
    ``x1 -> -x1`` and ``lam`` to ``x2 -> -x2``.
    """
    if lam <= 0 or mu <= 0:
        raise InvalidParameter("intertwine_z2 needs lam, mu > 0")
    rs = quadrature.gauss_jacobi(order, mu - 1, mu - 1)
    rt = quadrature.gauss_jacobi(order, lam - 1, lam - 1)
    ws = rs.weights * (1 + rs.nodes) / rs.weights.sum()
    wt = rt.weights * (1 + rt.nodes) / rt.weights.sum()
    x = np.asarray(x, dtype=float)
    S, T = np.meshgrid(rs.nodes * x[0], rt.nodes * x[1], indexing="ij")
    vals = np.asarray(f(S, T), dtype=float)
    return float(ws @ np.broadcast_to(vals, S.shape) @ wt)

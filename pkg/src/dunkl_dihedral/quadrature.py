"""Integration rules: Gauss-Jacobi, singular circle rules and simplex rules.

The circle weight ``|sin k theta|^{2 lam}`` vanishes to fractional order at
the ``2k`` points ``j pi / k``.  The circle rule splits ``[0, 2 pi]`` into
``4k`` half-panels, each with one such point at an end, and uses a
Gauss-Jacobi rule that carries the factor ``psi^{2 lam}`` exactly; the
remaining factor ``(|sin k psi| / psi)^{2 lam}`` is analytic and positive
on the half-panel, so the rule converges spectrally for smooth integrands.

The Dirichlet rule integrates against ``Dirichlet(alpha_0, ..., alpha_{k-1})``
by stick-breaking: each stick fraction is Beta distributed and handled by a
Gauss-Jacobi rule whose endpoint exponents match the Beta density.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_jacobi

from . import classical
from .errors import InvalidParameter

EXTRA_FACTORS = ("none", "sin2", "1+cos", "1-cos")


@dataclass(frozen=True)
class Rule1D:
    """Nodes and positive weights; ``exact_degree`` is ``None`` for spectral rules."""

    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int | None
    domain: str

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]):
        return np.tensordot(np.asarray(f(self.nodes)), self.weights, axes=([-1], [0]))

    @property
    def mass(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True)
class SimplexRule:
    """Probability rule on the simplex.

    ``points[:, j]`` is the barycentric coordinate ``u_j``; column 0 is
    ``u_0 = 1 - u_1 - ... - u_{k-1}``.  ``mass`` is the unnormalised
    integral of ``prod u_j^{alpha_j - 1}`` over ``T^{k-1}`` that the rule's
    raw Gauss weights produce.
    """

    points: np.ndarray
    weights: np.ndarray
    alphas: tuple
    mass: float
    order: int = field(default=0)

    @property
    def free(self) -> np.ndarray:
        """The coordinates ``(u_1, ..., u_{k-1})``."""
        return self.points[:, 1:]

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]):
        return np.asarray(f(self.points)) @ self.weights


# ---------------------------------------------------------------------------
# Gauss-Jacobi
# ---------------------------------------------------------------------------

def _gj_log_const(n, a, b):
    return ((a + b + 1) * math.log(2) + math.lgamma(n + a + 1) + math.lgamma(n + b + 1)
            - math.lgamma(n + a + b + 1) - math.lgamma(n + 1))


def gauss_jacobi(n: int, alpha: float, beta: float) -> Rule1D:
    """Gauss rule for ``(1-t)^alpha (1+t)^beta`` on ``[-1, 1]``.

    Nodes start from :func:`scipy.special.roots_jacobi` and are polished by
    Newton steps on the recurrence-evaluated polynomial; weights come from
    the closed Christoffel formula, which is more accurate near the
    endpoints than the eigenvector route when an exponent is close to -1.
    """
    if int(n) != n or n < 1:
        raise InvalidParameter("number of nodes must be a positive integer")
    if alpha <= -1 or beta <= -1:
        raise InvalidParameter("Jacobi exponents must exceed -1")
    n = int(n)
    x, _ = roots_jacobi(n, alpha, beta)
    x = np.asarray(x, dtype=float)
    c = 0.5 * (n + alpha + beta + 1)
    for _ in range(3):
        p = classical.jacobi(n, alpha, beta, x)
        dp = c * classical.jacobi(n - 1, alpha + 1, beta + 1, x) if n > 1 else np.full_like(x, c)
        step = p / dp
        x = np.clip(x - step, -1.0, 1.0)
        if np.max(np.abs(step)) < 1e-16:
            break
    dp = c * classical.jacobi(n - 1, alpha + 1, beta + 1, x) if n > 1 else np.full_like(x, c)
    w = np.exp(_gj_log_const(n, alpha, beta)) / ((1 - x) * (1 + x) * dp * dp)
    return Rule1D(x, w, 2 * n - 1, f"[-1,1] (1-t)^{alpha:g} (1+t)^{beta:g}")


def jacobi_mass(alpha: float, beta: float) -> float:
    """Closed form of ``int (1-t)^alpha (1+t)^beta dt`` over ``[-1, 1]``."""
    return math.exp((alpha + beta + 1) * math.log(2) + math.lgamma(alpha + 1) + math.lgamma(beta + 1)
                    - math.lgamma(alpha + beta + 2))


# ---------------------------------------------------------------------------
# circle rules
# ---------------------------------------------------------------------------

def _extra_factor(extra: str, theta):
    if extra == "none":
        return np.ones_like(theta)
    if extra == "sin2":
        return np.sin(theta) ** 2
    if extra == "1+cos":
        return 1 + np.cos(theta)
    if extra == "1-cos":
        return 1 - np.cos(theta)
    raise InvalidParameter(f"extra factor must be one of {EXTRA_FACTORS}")


def circle_weight_mass(k: int, lam: float, extra: str = "none") -> float:
    """Closed form of ``int_0^{2 pi} |sin k theta|^{2 lam} * extra d theta``."""
    base = classical.circle_mass(lam)
    if extra in ("none", "1+cos", "1-cos"):
        return base
    if extra == "sin2":
        return 2 * classical.mass_plus(k, lam)
    raise InvalidParameter(f"extra factor must be one of {EXTRA_FACTORS}")


def circle_rule(k: int, lam: float, extra: str = "none", order: int = 40,
                normalized: bool = True) -> Rule1D:
    """Rule on ``[0, 2 pi]`` for ``|sin k theta|^{2 lam}`` times an optional factor.

    ``order`` is the number of Gauss-Jacobi nodes on each of the ``4k``
    half-panels.  With ``normalized=True`` the weights are divided by the
    closed-form mass, so the rule integrates the constant 1 to one up to
    the quadrature error.
    """
    if lam < 0 or order < 1 or k < 1:
        raise InvalidParameter("circle_rule needs k >= 1, lam >= 0, order >= 1")
    gj = gauss_jacobi(order, 0.0, 2 * lam)
    h = np.pi / (2 * k)
    psi = (1 + gj.nodes) * h / 2
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(psi > 0, np.abs(np.sin(k * psi)) / psi, float(k))
    base_w = gj.weights * (h / 2) ** (2 * lam + 1) * ratio ** (2 * lam)
    thetas, weights = [], []
    for j in range(2 * k):
        left = j * np.pi / k
        thetas.append(left + psi)
        thetas.append(left + 2 * h - psi)
        weights.extend([base_w, base_w])
    theta = np.concatenate(thetas)
    w = np.concatenate(weights) * _extra_factor(extra, theta)
    if normalized:
        w = w / circle_weight_mass(k, lam, extra)
    order_idx = np.argsort(theta)
    return Rule1D(theta[order_idx], w[order_idx], None, f"[0,2pi] |sin {k}t|^{2 * lam:g} extra={extra}")


def circle_rule_two(k: int, lam: float, mu: float, order: int = 40,
                    normalized: bool = True) -> Rule1D:
    """Rule on ``[0, 2 pi]`` for ``|sin k theta|^{2 lam} |cos k theta|^{2 mu}``.

    This is the weight ``h^2`` of ``I_{2k}`` with one multiplicity per root
    class.  Each of the ``4k`` half-panels of length ``pi / (2k)`` has a zero
    of ``sin k theta`` at one end and a zero of ``cos k theta`` at the other,
    so a Gauss-Jacobi rule with exponents ``(2 mu, 2 lam)`` absorbs both
    singular factors.
    """
    if lam < 0 or mu < 0 or order < 1 or k < 1:
        raise InvalidParameter("circle_rule_two needs k >= 1, lam, mu >= 0, order >= 1")
    gj = gauss_jacobi(order, 2 * mu, 2 * lam)
    h = np.pi / (2 * k)
    psi = (1 + gj.nodes) * h / 2
    left = np.sin(k * psi) / psi
    right = np.cos(k * psi) / (h - psi)
    base_w = gj.weights * (h / 2) ** (2 * lam + 2 * mu + 1) * left ** (2 * lam) * right ** (2 * mu)
    thetas, weights = [], []
    for j in range(2 * k):
        start = j * np.pi / k
        thetas.append(start + psi)
        thetas.append(start + 2 * h - psi)
        weights.extend([base_w, base_w])
    theta = np.concatenate(thetas)
    w = np.concatenate(weights)
    if normalized:
        w = w * classical.c_circle_two(lam, mu)
    idx = np.argsort(theta)
    return Rule1D(theta[idx], w[idx], None, f"[0,2pi] |sin {k}t|^{2 * lam:g} |cos {k}t|^{2 * mu:g}")


# ---------------------------------------------------------------------------
# simplex rules and moments
# ---------------------------------------------------------------------------

DEFAULT_SIMPLEX_BUDGET = 1_000_000


def default_simplex_order(k: int, budget: int = DEFAULT_SIMPLEX_BUDGET, cap: int = 40) -> int:
    """Points per axis: ``cap`` unless ``cap**(k-1)`` nodes exceed ``budget``."""
    if k <= 1:
        return cap
    return max(2, min(cap, int(math.floor(budget ** (1.0 / (k - 1)) + 1e-9))))


def dirichlet_rule_general(alphas: Sequence[float], order: int | None = None) -> SimplexRule:
    """Tensor stick-breaking rule for ``Dirichlet(alphas)``.

    ``alphas[0]`` belongs to ``u_0 = 1 - sum_{i>=1} u_i``.  With
    ``s_i ~ Beta(alpha_i, alpha_0 + alpha_{i+1} + ...)`` the coordinates are
    ``u_1 = s_1``, ``u_i = (1-s_1)...(1-s_{i-1}) s_i`` and ``u_0`` is the
    remaining stick.  Exact for polynomials of total degree ``<= 2*order-1``.
    """
    alphas = tuple(float(a) for a in alphas)
    if any(a <= 0 for a in alphas):
        raise InvalidParameter("Dirichlet parameters must be positive")
    k = len(alphas)
    if order is None:
        order = default_simplex_order(k)
    if k == 1:
        return SimplexRule(np.ones((1, 1)), np.ones(1), alphas, 1.0, order)
    weights = np.ones(1)
    mass = 1.0
    remainder = np.ones(1)  # length of the stick left after each break
    cols = []
    for i in range(1, k):
        a = alphas[i]
        b = alphas[0] + sum(alphas[i + 1:])
        gj = gauss_jacobi(order, b - 1, a - 1)
        s = (1 + gj.nodes) / 2
        raw = gj.weights.sum()
        mass *= raw / 2 ** (a + b - 1)
        ws = gj.weights / raw
        # outer product with the existing grid
        cols = [np.repeat(c, order) for c in cols]
        rem = np.repeat(remainder, order)
        si = np.tile(s, len(remainder))
        cols.append(rem * si)
        remainder = rem * (1 - si)
        weights = np.repeat(weights, order) * np.tile(ws, len(weights))
    # mass is the product of the Beta integrals, i.e. the unnormalised
    # integral of prod u_j^{alpha_j - 1} over the simplex
    pts = np.column_stack([remainder] + cols)
    return SimplexRule(pts, weights, alphas, mass, order)


def dirichlet_rule(k: int, lam: float, order: int | None = None) -> SimplexRule:
    """Probability rule for ``Dirichlet(lam+1, lam, ..., lam)`` on ``T^{k-1}``."""
    if lam <= 0:
        raise InvalidParameter("dirichlet_rule needs lam > 0")
    return dirichlet_rule_general([lam + 1] + [lam] * (k - 1), order)


def dirichlet_moment(k: int, lam: float, m: Sequence[int]) -> float:
    """``E[prod u_j^{m_j}]`` under ``Dirichlet(lam+1, lam, ..., lam)``."""
    if lam <= 0:
        raise InvalidParameter("dirichlet_moment needs lam > 0")
    m = [int(x) for x in m]
    if len(m) != k or any(x < 0 for x in m):
        raise InvalidParameter("multi-index must have k nonnegative entries")
    logv = (math.lgamma(lam + 1 + m[0]) - math.lgamma(lam + 1)
            + sum(math.lgamma(lam + x) - math.lgamma(lam) for x in m[1:])
            - math.lgamma(k * lam + 1 + sum(m)) + math.lgamma(k * lam + 1))
    return math.exp(logv)


def dirichlet_sample(k: int, lam: float, rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` draws from ``Dirichlet(lam+1, lam, ..., lam)``; column 0 is ``u_0``."""
    if lam <= 0:
        raise InvalidParameter("dirichlet_sample needs lam > 0")
    if not isinstance(rng, np.random.Generator):
        raise InvalidParameter("pass an explicit numpy Generator")
    shape = np.array([lam + 1] + [lam] * (k - 1))
    g = rng.gamma(shape, size=(count, k))
    return g / g.sum(axis=1, keepdims=True)


def mc_mean(values) -> tuple[float, float]:
    """Sample mean and its standard error."""
    v = np.asarray(values, dtype=float)
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(len(v)))


# ---------------------------------------------------------------------------
# two auxiliary identities
# ---------------------------------------------------------------------------

def simplex_integral_lemma(x: Sequence[float], lams: Sequence[float], r: float,
                           order: int | None = None) -> tuple[float, float]:
    """Both sides of ``prod (1 - 2 r x_i + r^2)^{-lam_i} = E[(1 - 2 r sum x_i u_i + r^2)^{-|lam|}]``.

    The expectation is under ``Dirichlet(lams)`` with ``u_0`` paired with
    ``x[0]``.
    """
    x = np.asarray(x, dtype=float)
    lams = np.asarray(lams, dtype=float)
    lhs = float(np.prod((1 - 2 * r * x + r * r) ** (-lams)))
    rule = dirichlet_rule_general(lams, order)
    lin = rule.points @ x
    rhs = float(((1 - 2 * r * lin + r * r) ** (-lams.sum())) @ rule.weights)
    return lhs, rhs


def trig_product_lemma(k: int, r, theta) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of ``1 - 2 r^k cos k theta + r^{2k} = prod_j (1 - 2 r cos(theta - 2 j pi / k) + r^2)``."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    lhs = 1 - 2 * r**k * np.cos(k * theta) + r ** (2 * k)
    rhs = np.ones(np.broadcast(r, theta).shape)
    for j in range(k):
        rhs = rhs * (1 - 2 * r * np.cos(theta - 2 * j * np.pi / k) + r * r)
    return lhs, rhs

"""Numerical verification suites.

Each check is a top-level function that returns a list of
:class:`CheckRecord`.  A suite is an ordered list of ``(check, kwargs)``
tasks.  The tasks are independent, so they can run in a process pool, and
the report keeps them in task order.  With a fixed seed the JSON form of a
report is therefore byte-identical between runs.

Tolerances default to the acceptance values.  A caller may tighten them;
loosening requires ``allow_loose=True``.
"""
from __future__ import annotations

import inspect
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial

from . import classical, harmonics, quadrature, sieved
from .dihedral import make_group, vertex
from .dunkl import (MultiplicityTwo, dunkl_apply, dunkl_apply_two_param, intertwine_ridge_exact,
                    intertwine_ridge_quad, intertwine_z2, ridge)
from .errors import InvalidParameter
from .polyring import BiPoly

SUITES = ("intertwine", "commute", "harmonics", "orthogonality", "kernels", "identities", "products")


@dataclass
class CheckRecord:
    identity: str
    params: dict
    max_dev: float
    tol: float
    passed: bool
    scale: str = "abs"  # "abs" deviations or "stderr" (Monte Carlo)

    def to_dict(self):
        d = asdict(self)
        d["max_dev"] = float(d["max_dev"])
        d["tol"] = float(d["tol"])
        return d


def record(identity, params, dev, tol, scale="abs") -> CheckRecord:
    dev = float(dev)
    return CheckRecord(identity, params, dev, float(tol), bool(np.isfinite(dev) and dev <= tol), scale)


@dataclass
class VerificationReport:
    suite: str
    seed: int
    grid: dict
    records: list = field(default_factory=list)
    conventions: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self, timing: bool = False):
        d = {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "grid": self.grid,
            "conventions": self.conventions,
            "records": [r.to_dict() for r in self.records],
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(_plain(self.to_dict(timing)), sort_keys=True, indent=1)

    def failures(self):
        return [r for r in self.records if not r.passed]


def _plain(obj):
    """Convert numpy scalars and tuples so ``json`` output is stable."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _rng(seed: int, *keys) -> np.random.Generator:
    """Generator keyed by the seed and integer labels of the check."""
    return np.random.default_rng([int(seed)] + [int(k) for k in keys])


def _lam_key(lam: float) -> int:
    return int(round(lam * 1000))


def _unit_points(rng, count):
    th = rng.uniform(0, 2 * np.pi, count)
    return np.stack([np.cos(th), np.sin(th)], axis=-1)


# ---------------------------------------------------------------------------
# intertwining operator
# ---------------------------------------------------------------------------

def check_intertwining(k, lam, max_degree=8, tol=1e-10):
    """Coefficientwise ``D_i V F_p - V d_i F_p`` over ``p`` and ridge monomials ``t^n``."""
    g = make_group(k)
    worst = 0.0
    for p in range(2 * k):
        y = vertex(k, p).point
        for n in range(1, max_degree + 1):
            VF = intertwine_ridge_exact(ridge(k, p, Polynomial.basis(n)), lam)
            Vd = intertwine_ridge_exact(ridge(k, p, Polynomial.basis(n - 1)), lam).scale(n)
            for axis in (1, 2):
                lhs = dunkl_apply(g, axis, lam, VF)
                worst = max(worst, (lhs - Vd.scale(y[axis - 1])).max_abs())
    return [record("intertwining", {"k": k, "lam": lam, "max_degree": max_degree}, worst, tol)]


def check_v_one(k, lam, seed=0, samples=1_000_000, order=None, tol=1e-12, mc_sigmas=3.0):
    """``V 1 = 1`` by the deterministic simplex rule and by Monte Carlo.

    The Monte Carlo part also compares ``V t^2`` with the exact path so that
    the standard-error test is not trivially satisfied by a constant.
    """
    rng = _rng(seed, 2, k, _lam_key(lam))
    x = _unit_points(rng, 1)[0] * 0.8
    one = ridge(k, 0, Polynomial([1.0]))
    det = intertwine_ridge_quad(one, lam, x, "deterministic", order=order)
    out = [record("V1-deterministic", {"k": k, "lam": lam}, abs(det.value - 1), tol)]
    mc = intertwine_ridge_quad(one, lam, x, "monte-carlo", samples=samples, rng=rng)
    out.append(record("V1-monte-carlo", {"k": k, "lam": lam, "samples": samples},
                      abs(mc.value - 1), max(mc_sigmas * mc.stderr, 1e-12), "stderr"))
    sq = ridge(k, 1 % (2 * k), Polynomial([0.0, 0.0, 1.0]))
    exact = float(intertwine_ridge_exact(sq, lam)(x))
    mc2 = intertwine_ridge_quad(sq, lam, x, "monte-carlo", samples=samples, rng=rng)
    out.append(record("ridge-monte-carlo", {"k": k, "lam": lam, "samples": samples, "profile": "t^2"},
                      abs(mc2.value - exact), mc_sigmas * mc2.stderr, "stderr"))
    return out


def check_normalization(k, lam, tol=1e-12):
    """Stick-breaking mass of ``u_0^lam prod u_i^(lam-1)`` times ``a_lam^(k)``."""
    rule = quadrature.dirichlet_rule(k, lam, order=4)
    dev = abs(rule.mass * classical.a_lambda_k(k, lam) - 1)
    return [record("normalization", {"k": k, "lam": lam}, dev, tol)]


def check_cross_z2(lam, max_degree=6, seed=0, tol=1e-10):
    """``I_2``: exact moment path against the product-integral intertwiner with ``mu = lam``."""
    rng = _rng(seed, 4, _lam_key(lam))
    pts = rng.uniform(-1, 1, (5, 2))
    worst = 0.0
    for p in range(4):
        a = p * np.pi / 2
        c, s = math.cos(a), math.sin(a)
        for n in range(max_degree + 1):
            VF = intertwine_ridge_exact(ridge(2, p, Polynomial.basis(n)), lam)
            for x in pts:
                z2 = intertwine_z2(lambda S, T: (c * S + s * T) ** n, lam, lam, x)
                worst = max(worst, abs(float(VF(x)) - z2))
    return [record("cross-oracle-z2", {"lam": lam, "max_degree": max_degree}, worst, tol)]


# ---------------------------------------------------------------------------
# commutativity
# ---------------------------------------------------------------------------

def check_commute(k, lam, max_degree=6, tol=1e-10):
    g = make_group(k)
    worst = 0.0
    for n in range(max_degree + 1):
        for a in range(n + 1):
            f = BiPoly.monomial(a, n - a)
            d12 = dunkl_apply(g, 1, lam, dunkl_apply(g, 2, lam, f))
            d21 = dunkl_apply(g, 2, lam, dunkl_apply(g, 1, lam, f))
            worst = max(worst, (d12 - d21).max_abs())
    return [record("commutativity", {"k": k, "lam": lam, "max_degree": max_degree}, worst, tol)]


def check_commute_two(k, lam, mu, max_degree=6, tol=1e-10):
    """Two-parameter operators of ``I_k`` (``k`` even) commute."""
    g = make_group(k)
    mult = MultiplicityTwo(lam, mu)
    worst = 0.0
    for n in range(max_degree + 1):
        for a in range(n + 1):
            f = BiPoly.monomial(a, n - a)
            d12 = dunkl_apply_two_param(g, 1, mult, dunkl_apply_two_param(g, 2, mult, f))
            d21 = dunkl_apply_two_param(g, 2, mult, dunkl_apply_two_param(g, 1, mult, f))
            worst = max(worst, (d12 - d21).max_abs())
    return [record("commutativity-two-param", {"k": k, "lam": lam, "mu": mu, "max_degree": max_degree},
                   worst, tol)]


# ---------------------------------------------------------------------------
# h-harmonics
# ---------------------------------------------------------------------------

def check_harmonicity(k, lam, max_degree=10, tol=1e-9):
    worst = 0.0
    for n in range(max_degree + 1):
        for i in (1, 2):
            if i == 2 and n == 0:
                continue
            worst = max(worst, harmonics.y_basis(n, i, k, lam).laplacian_residual())
    return [record("harmonicity", {"k": k, "lam": lam, "max_degree": max_degree}, worst, tol)]


def _gram_records(name, params, G, norms, tol):
    D = np.diag(G)
    off = np.abs(G - np.diag(D)).max() if len(D) > 1 else 0.0
    rel = np.abs(D / norms - 1).max()
    return [record(name + "-offdiag", params, off, tol), record(name + "-norms", params, rel, tol)]


def check_h_gram(k, lam, max_degree=12, order=40, tol=1e-9):
    rule = quadrature.circle_rule(k, lam, order=order)
    funcs, norms = [], []
    for n in range(max_degree + 1):
        for i in (1, 2):
            if i == 2 and n == 0:
                continue
            funcs.append(harmonics.y_basis(n, i, k, lam).on_circle)
            norms.append(harmonics.h_norm(n, i, k, lam))
    G = harmonics.gram_matrix(funcs, rule)
    return _gram_records("h-harmonic-gram", {"k": k, "lam": lam, "max_degree": max_degree},
                         G, np.array(norms), tol)


def check_reproducing(k, lam, max_degree=8, seed=0, order=40, tol=1e-9):
    """``c int P_n(xi(th), y) Y(th) w = Y(y)`` for both basis elements of each degree."""
    rule = quadrature.circle_rule(k, lam, order=order)
    pts = np.stack([np.cos(rule.nodes), np.sin(rule.nodes)], axis=-1)
    rng = _rng(seed, 7, k, _lam_key(lam))
    worst = 0.0
    for y in _unit_points(rng, 3):
        for n in range(max_degree + 1):
            kern = harmonics.reproducing_kernel_n(n, k, lam, pts, y)
            for i in (1, 2):
                if i == 2 and n == 0:
                    continue
                Y = harmonics.y_basis(n, i, k, lam)
                worst = max(worst, abs(rule.weights @ (kern * Y.on_circle(rule.nodes)) - float(Y(y))))
    return [record("reproducing-kernel", {"k": k, "lam": lam, "max_degree": max_degree}, worst, tol)]


def check_circle_poisson(k, lam, r=0.5, N=80, points=100, seed=0, tol=1e-9, tail_limit=1e-14):
    """Closed vertex Poisson kernel against its ``N``-term series, one record per vertex."""
    rng = _rng(seed, 8, k, _lam_key(lam))
    xs = _unit_points(rng, points)
    out = []
    for p in range(2 * k):
        s = harmonics.poisson_series(k, lam, xs, vertex(k, p).point, r, N)
        worst = np.abs(s.value - harmonics.poisson_closed_vertex(k, lam, p, xs, r)).max()
        params = {"k": k, "lam": lam, "p": p, "r": r, "N": N, "tail_bound": s.tail_bound}
        out.append(record("circle-poisson", params, worst if s.tail_bound < tail_limit else np.inf, tol))
    return out


def check_poisson_intertwiner(k, lam, p, r=0.5, seed=0, tol=1e-8):
    """The closed kernel equals the intertwined ridge profile evaluated by the simplex rule."""
    rng = _rng(seed, 9, k, _lam_key(lam), p)
    F = ridge(k, p, harmonics.poisson_profile(k, lam, r))
    worst = 0.0
    for x in _unit_points(rng, 5):
        q = intertwine_ridge_quad(F, lam, x, "deterministic").value
        worst = max(worst, abs(q - harmonics.poisson_closed_vertex(k, lam, p, x, r)))
    return [record("poisson-intertwiner", {"k": k, "lam": lam, "p": p, "r": r}, worst, tol)]


def check_zonal(k, lam, max_degree=6, seed=0, tol=1e-9):
    rng = _rng(seed, 10, k, _lam_key(lam))
    xs = _unit_points(rng, 5)
    worst = 0.0
    for p in range(2 * k):
        for n in range(max_degree + 1):
            for x in xs:
                a, b = harmonics.zonal_identity_check(k, lam, n, p, x)
                worst = max(worst, abs(a - b))
    return [record("zonal", {"k": k, "lam": lam, "max_degree": max_degree}, worst, tol)]


def check_two_param_gram(k, lam, mu, max_degree=12, order=40, tol=1e-9):
    """Orthogonality of the generalised-Gegenbauer basis of ``I_{2k}`` (off-diagonal, normalised)."""
    rule = quadrature.circle_rule_two(k, lam, mu, order=order)
    funcs = [lambda th, n=n, i=i: harmonics.two_param_basis(n, i, k, lam, mu, th)
             for n in range(max_degree + 1) for i in (1, 2) if not (i == 2 and n == 0)]
    G = harmonics.gram_matrix(funcs, rule)
    d = np.sqrt(np.diag(G))
    off = np.abs(G / np.outer(d, d) - np.eye(len(d))).max()
    return [record("two-param-basis-gram", {"k": k, "lam": lam, "mu": mu, "max_degree": max_degree},
                   off, tol)]


# ---------------------------------------------------------------------------
# interval families
# ---------------------------------------------------------------------------

def check_family_gram(tag, k, lam, max_degree=12, order=40, tol=1e-9):
    fam = sieved.family(tag, k, lam)
    rule = fam.rule(order)
    P = sieved.sieved_table(fam, max_degree, rule.nodes)
    G = (P * rule.weights) @ P.T
    norms = np.array([sieved.sieved_norm(fam, n) for n in range(max_degree + 1)])
    return _gram_records(f"{tag}-gram", {"family": tag, "k": k, "lam": lam, "max_degree": max_degree},
                         G, norms, tol)


KERNEL_NAMES = {
    "minus": ("poisson-minus", "generating-minus"),
    "plus": ("poisson-plus", "generating-plus-square"),
    "mod-plus": ("modified-kernel", "modified-kernel-endpoint"),
    "mod-minus": ("modified-kernel-mirror", "modified-kernel-mirror-endpoint"),
}


def check_interval_poisson(tag, k, lam, r=0.5, N=80, points=100, seed=0, tol=1e-9, tail_limit=1e-14):
    """Closed interval kernel of ``tag`` against the ``N``-term series at each vertex abscissa."""
    fam = sieved.family(tag, k, lam)
    rng = _rng(seed, 12, sieved.TAGS.index(tag), k, _lam_key(lam))
    t = rng.uniform(-1, 1, points)
    tail = sieved.tail_bound(fam, r, N)
    out = []
    for p in range(k):
        s = sieved.vertex_abscissa(fam, p)
        dev = np.abs(sieved.poisson_series_interval(fam, t, s, r, N) - sieved.poisson_closed(fam, p, t, r)).max()
        name = KERNEL_NAMES[tag][1 if p == 0 else 0]
        params = {"family": tag, "k": k, "lam": lam, "p": p, "r": r, "N": N, "tail_bound": tail}
        out.append(record(name, params, dev if tail < tail_limit else np.inf, tol))
    return out


def check_generating_plus(k, lam, r=0.4, points=50, seed=0, tol=1e-10):
    rng = _rng(seed, 13, k, _lam_key(lam))
    t = rng.uniform(-1, 1, points)
    a, b = sieved.generating_plus(k, lam, t, r)
    return [record("generating-plus-linear", {"k": k, "lam": lam, "r": r}, np.abs(a - b).max(), tol)]


def check_convention(k, lam, tol=1e-9, reject=1e-3):
    """Weight orientation of the doubled family must be decisive."""
    conv = sieved.resolve_modified_convention(k, lam)
    lo = min(conv.residual_1plus, conv.residual_1minus)
    hi = max(conv.residual_1plus, conv.residual_1minus)
    decisive = lo < tol and hi > reject
    return [record("modified-orientation", {"k": k, "lam": lam, "chosen": conv.doubling_extra,
                                            "rejected_residual": hi},
                   lo if decisive else np.inf, tol)]


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def check_trig_product(k, samples=1000, seed=0, tol=1e-12):
    rng = _rng(seed, 14, k)
    r = rng.uniform(0, 1, samples)
    th = rng.uniform(0, 2 * np.pi, samples)
    a, b = quadrature.trig_product_lemma(k, r, th)
    return [record("trig-product", {"k": k, "samples": samples}, np.abs(a - b).max(), tol)]


def check_simplex_lemma(k, seed=0, tol=1e-9):
    rng = _rng(seed, 15, k)
    worst = 0.0
    for _ in range(5):
        x = rng.uniform(-1, 1, k)
        lams = rng.uniform(0.3, 2.0, k)
        r = rng.uniform(0, 0.6)
        a, b = quadrature.simplex_integral_lemma(x, lams, r)
        worst = max(worst, abs(a - b))
    return [record("simplex-lemma", {"k": k}, worst, tol)]


def check_connection(kind, k, lam, max_m=10, tol=1e-10):
    """Connection identity for ``2 <= m <= max_m`` and ``1 <= j <= m``."""
    th = np.linspace(0.0, np.pi, 101)
    worst = 0.0
    for m in range(2, max_m + 1):
        for j in range(1, m + 1):
            a, b = sieved.connection_sum(kind, k, lam, m, j, th)
            worst = max(worst, np.abs(a - b).max())
    return [record(f"connection-{kind}", {"k": k, "lam": lam, "max_m": max_m}, worst, tol)]


def check_contiguous(lam, max_m=10, tol=1e-10):
    t = np.linspace(-1, 1, 101)
    worst = max(np.abs(np.subtract(*sieved.gegenbauer_contiguous(m, lam, t))).max()
                for m in range(max_m + 1))
    return [record("gegenbauer-contiguous", {"lam": lam, "max_m": max_m}, worst, tol)]


def check_doubling(k, lam, max_n=10, tol=1e-12):
    th = np.linspace(0, np.pi, 73)
    even = max(np.abs(np.subtract(*sieved.doubling_relation(k, lam, n, th))).max() for n in range(max_n + 1))
    odd = max(np.abs(np.subtract(*sieved.doubling_relation_odd(k, lam, n, th))).max() for n in range(max_n + 1))
    p = {"k": k, "lam": lam, "max_n": max_n}
    return [record("doubling-even", p, even, tol), record("doubling-odd", p, odd, tol)]


def check_jacobi_generating(lam, r=0.4, points=50, seed=0, tol=1e-10):
    rng = _rng(seed, 16, _lam_key(lam))
    t = rng.uniform(-1, 1, points)
    out = []
    for which in (1, 2):
        a, b = sieved.jacobi_generating(which, lam, t, r)
        out.append(record(f"jacobi-generating-{which}", {"lam": lam, "r": r}, np.abs(a - b).max(), tol))
    return out


# ---------------------------------------------------------------------------
# product formulas
# ---------------------------------------------------------------------------

def check_product_k_gegen(k, lam, max_m=8, seed=0, tol=1e-8):
    rng = _rng(seed, 17, k, _lam_key(lam))
    thetas = rng.uniform(0, 2 * np.pi, 3)
    worst = 0.0
    for m in range(max_m + 1):
        for th in thetas:
            a, b = sieved.product_formula("k-gegen-sub", k=k, lam=lam, m=m, theta=th)
            worst = max(worst, abs(a - b))
    return [record("product-k-gegenbauer", {"k": k, "lam": lam, "max_m": max_m}, worst, tol)]


def check_product_gg0(lam, mu, max_m=6, seed=0, tol=1e-8):
    rng = _rng(seed, 18, _lam_key(lam), _lam_key(mu))
    worst = 0.0
    for m in range(max_m + 1):
        for t in rng.uniform(-1, 1, 5):
            a, b = sieved.product_formula("gg0", lam=lam, mu=mu, m=m, t=t)
            worst = max(worst, abs(a - b))
    return [record("product-gg-endpoint", {"lam": lam, "mu": mu, "max_m": max_m}, worst, tol)]


def check_product_gg(lam, mu, max_m=6, seed=0, tol=1e-8):
    rng = _rng(seed, 19, _lam_key(lam), _lam_key(mu))
    worst = 0.0
    for m in range(max_m + 1):
        for th, ph in rng.uniform(0, np.pi, (4, 2)):
            a, b = sieved.product_formula("gg", lam=lam, mu=mu, m=m, theta=th, phi=ph)
            worst = max(worst, abs(a - b))
    return [record("product-gg", {"lam": lam, "mu": mu, "max_m": max_m}, worst, tol)]


# ---------------------------------------------------------------------------
# conventions recorded in every report
# ---------------------------------------------------------------------------

def _kernel_abscissa_convention(k=3, lam=1.0, r=0.5, N=80):
    """Deviation of the modified kernel at ``cos(p pi/k)`` versus ``cos(2 p pi/k)`` (``p = 1``)."""
    fam = sieved.family("mod-plus", k, lam)
    t = np.linspace(-0.95, 0.95, 41)
    closed = sieved.poisson_closed(fam, 1, t, r)
    out = {}
    for name, s in (("cos(p pi/k)", math.cos(math.pi / k)), ("cos(2 p pi/k)", math.cos(2 * math.pi / k))):
        out[name] = float(np.abs(sieved.poisson_series_interval(fam, t, s, r, N) - closed).max())
    return out


def _connection_sign_convention(k=3, lam=0.8, m=4, j=0):
    # j = k - 1 would make the second U term vanish and hide the sign
    th = np.linspace(0.0, np.pi, 41)
    out = {}
    for sign, name in ((1, "+"), (-1, "-")):
        a, b = sieved.connection_sum("U", k, lam, m, j, th, sign=sign)
        out[name] = float(np.abs(a - b).max())
    return out


def _gg_prefactor_convention(lam=1.0, mu=0.5, m=3, theta=0.7, phi=0.4):
    out = {}
    for flag in (False, True):
        a, b = sieved.product_formula("gg", lam=lam, mu=mu, m=m, theta=theta, phi=phi, prefactor=flag)
        out["with prefactor" if flag else "without prefactor"] = abs(a - b)
    return out


def _two_param_reading_convention(k=3, lam=1.0, mu=0.5, degree=8):
    rule = quadrature.circle_rule_two(k, lam, mu)
    out = {}
    for reading in harmonics.READINGS:
        funcs = [lambda th, n=n, i=i: harmonics.two_param_basis(n, i, k, lam, mu, th, reading=reading)
                 for n in range(degree + 1) for i in (1, 2) if not (i == 2 and n == 0)]
        G = harmonics.gram_matrix(funcs, rule)
        d = np.sqrt(np.diag(G))
        out[reading] = float(np.abs(G / np.outer(d, d) - np.eye(len(d))).max())
    return out


def conventions(ks=(1, 2, 3, 4), lams=(0.5, 1.0, 2.5)) -> dict:
    """Resolved sign, label and index conventions with the evidence for each."""
    modified = [sieved.resolve_modified_convention(k, float(lam)).as_dict() for k in ks for lam in lams]
    return {
        "modified_family": modified,
        "modified_kernel_abscissa": {"chosen": "cos(p pi/k)", "deviation": _kernel_abscissa_convention()},
        "connection_U_sign": {"chosen": "+", "deviation": _connection_sign_convention()},
        "gg_product_prefactor": {"chosen": "without prefactor", "deviation": _gg_prefactor_convention()},
        "two_param_basis_reading": {"chosen": "m-shift", "gram_offdiag": _two_param_reading_convention()},
        "plus_norm_mass_factor": {
            "note": "plus norms are relative to the plus-family mass",
            "factor_k_ge_2": classical.mass_minus(2, 1.0) / classical.mass_plus(2, 1.0),
        },
        "a_lambda_k": "Gamma(k lam + 1) / (lam Gamma(lam)^k), reciprocal of the simplex mass",
    }


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

@dataclass
class Options:
    """Grid and tolerance settings; ``None`` fields fall back to per-check defaults."""

    ks: tuple | None = None
    lams: tuple | None = None
    mus: tuple | None = None
    max_degree: int | None = None
    samples: int | None = None
    mc_samples: int = 1_000_000
    quad_order: int | None = None
    seed: int = 0
    tol: float | None = None
    allow_loose: bool = False
    jobs: int = 1


def _pick(value, default):
    return default if value is None else value


def _tasks_intertwine(o: Options):
    ks = _pick(o.ks, (2, 3, 4, 5, 6))
    lams = _pick(o.lams, (0.5, 1.0, 1.7))
    deg = _pick(o.max_degree, 8)
    tasks = [(check_intertwining, dict(k=k, lam=lam, max_degree=deg)) for k in ks for lam in lams]
    tasks += [(check_v_one, dict(k=k, lam=lam, seed=o.seed, samples=o.mc_samples, order=o.quad_order))
              for k in ks for lam in lams]
    tasks += [(check_normalization, dict(k=k, lam=lam))
              for k in _pick(o.ks, (2, 3, 4, 5, 6)) for lam in _pick(o.lams, (0.4, 1.0, 2.5))]
    tasks += [(check_cross_z2, dict(lam=lam, max_degree=min(deg, 6), seed=o.seed)) for lam in lams]
    return tasks


def _tasks_commute(o: Options):
    ks = _pick(o.ks, (2, 3, 4, 5, 6))
    lams = _pick(o.lams, (0.5, 1.0, 1.7))
    deg = _pick(o.max_degree, 6)
    tasks = [(check_commute, dict(k=k, lam=lam, max_degree=deg)) for k in ks for lam in lams]
    tasks += [(check_commute_two, dict(k=k, lam=lam, mu=mu, max_degree=deg))
              for k in ks if k % 2 == 0 for lam in lams[:2] for mu in _pick(o.mus, (0.3, 1.2))]
    return tasks


def _tasks_harmonics(o: Options):
    ks = _pick(o.ks, (2, 3, 4, 5))
    tasks = [(check_harmonicity, dict(k=k, lam=lam, max_degree=_pick(o.max_degree, 10)))
             for k in ks for lam in _pick(o.lams, (0.5, 1.0, 2.0))]
    tasks += [(check_h_gram, dict(k=k, lam=lam, max_degree=_pick(o.max_degree, 12)))
              for k in ks for lam in _pick(o.lams, (0.5, 1.0, 2.5))]
    tasks += [(check_reproducing, dict(k=k, lam=lam, max_degree=_pick(o.max_degree, 8), seed=o.seed))
              for k in [k for k in ks if k <= 4] for lam in _pick(o.lams, (0.5, 1.0))]
    tasks += [(check_circle_poisson, dict(k=k, lam=lam, seed=o.seed))
              for k in ks for lam in _pick(o.lams, (0.5, 1.0, 1.7))]
    tasks += [(check_poisson_intertwiner, dict(k=k, lam=1.0 if o.lams is None else o.lams[0], p=p, seed=o.seed))
              for k in [k for k in ks if k <= 4] for p in (0, 1)]
    tasks += [(check_zonal, dict(k=k, lam=lam, max_degree=_pick(o.max_degree, 6), seed=o.seed))
              for k in [k for k in ks if k <= 3] for lam in _pick(o.lams, (1.0,))]
    tasks += [(check_two_param_gram, dict(k=k, lam=lam, mu=mu))
              for k in (1, 2, 3, 4, 5) for lam in (0.5, 1.0) for mu in _pick(o.mus, (0.5, 1.0))]
    return tasks


def _tasks_orthogonality(o: Options):
    ks = _pick(o.ks, (1, 2, 3, 4, 5))
    lams = _pick(o.lams, (0.5, 1.0, 2.5))
    deg = _pick(o.max_degree, 12)
    return [(check_family_gram, dict(tag=tag, k=k, lam=lam, max_degree=deg))
            for tag in sieved.TAGS for k in ks for lam in lams]


def _tasks_kernels(o: Options):
    ks = _pick(o.ks, (1, 2, 3, 4, 5))
    lams = _pick(o.lams, (0.5, 1.0, 1.7))
    tasks = [(check_interval_poisson, dict(tag=tag, k=k, lam=lam, seed=o.seed))
             for tag in sieved.TAGS for k in ks for lam in lams]
    tasks += [(check_generating_plus, dict(k=k, lam=lam, seed=o.seed)) for k in ks for lam in lams]
    tasks += [(check_convention, dict(k=k, lam=lam))
              for k in _pick(o.ks, (1, 2, 3, 4)) for lam in _pick(o.lams, (0.5, 1.0, 2.5))]
    return tasks


def _tasks_identities(o: Options):
    tasks = [(check_trig_product, dict(k=k, samples=_pick(o.samples, 1000), seed=o.seed))
             for k in _pick(o.ks, tuple(range(1, 9)))]
    tasks += [(check_simplex_lemma, dict(k=k, seed=o.seed)) for k in _pick(o.ks, (1, 2, 3, 4)) if k <= 4]
    lams = _pick(o.lams, (0.5, 0.8, 1.0))
    tasks += [(check_connection, dict(kind=kind, k=k, lam=lam))
              for kind in ("T", "U") for k in _pick(o.ks, (1, 2, 3, 4, 5)) for lam in lams]
    tasks += [(check_contiguous, dict(lam=lam)) for lam in lams]
    tasks += [(check_doubling, dict(k=k, lam=lam))
              for k in _pick(o.ks, (1, 2, 3, 4)) for lam in _pick(o.lams, (0.5, 1.0))]
    tasks += [(check_jacobi_generating, dict(lam=lam, seed=o.seed)) for lam in _pick(o.lams, (0.5, 1.0, 2.5))]
    return tasks


def _tasks_products(o: Options):
    tasks = [(check_product_k_gegen, dict(k=k, lam=lam, seed=o.seed))
             for k in _pick(o.ks, (1, 2, 3, 4)) if k <= 4 for lam in _pick(o.lams, (0.5, 1.0))]
    pairs = [(lam, mu) for lam in _pick(o.lams, (0.5, 1.0)) for mu in _pick(o.mus, (0.5, 1.0))]
    tasks += [(check_product_gg0, dict(lam=lam, mu=mu, seed=o.seed)) for lam, mu in pairs]
    tasks += [(check_product_gg, dict(lam=lam, mu=mu, seed=o.seed)) for lam, mu in pairs]
    return tasks


SUITE_TASKS: dict[str, Callable] = {
    "intertwine": _tasks_intertwine,
    "commute": _tasks_commute,
    "harmonics": _tasks_harmonics,
    "orthogonality": _tasks_orthogonality,
    "kernels": _tasks_kernels,
    "identities": _tasks_identities,
    "products": _tasks_products,
}


def suite_tasks(suite: str, options: Options):
    if suite == "all":
        return [t for name in SUITES for t in SUITE_TASKS[name](options)]
    if suite not in SUITE_TASKS:
        raise InvalidParameter(f"unknown suite {suite!r}")
    return SUITE_TASKS[suite](options)


def _apply_tol(task, tol: float | None, allow_loose: bool):
    fn, kwargs = task
    if tol is None:
        return task
    default = inspect.signature(fn).parameters["tol"].default
    if tol > default and not allow_loose:
        raise InvalidParameter(
            f"--tol {tol:g} is looser than the default {default:g} of {fn.__name__}; pass --allow-loose")
    return fn, dict(kwargs, tol=tol)


def _run_task(task):
    fn, kwargs = task
    return fn(**kwargs)


def run_suite(suite: str, options: Options | None = None) -> VerificationReport:
    options = options or Options()
    tasks = [_apply_tol(t, options.tol, options.allow_loose) for t in suite_tasks(suite, options)]
    start = time.perf_counter()
    if options.jobs > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    grid = {k: v for k, v in asdict(options).items() if k not in ("jobs",)}
    report = VerificationReport(suite, options.seed, _plain(grid))
    report.records = [r for batch in results for r in batch]
    report.conventions = conventions()
    report.wall_time = time.perf_counter() - start
    return report

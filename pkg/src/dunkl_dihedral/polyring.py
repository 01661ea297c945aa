"""Dense bivariate polynomials with real coefficients.

``BiPoly`` stores ``c[i, j]`` as the coefficient of ``x1**i * x2**j``.  It is
the exact carrier for Dunkl operator computations: derivatives are index
shifts, reflections are linear substitutions, and the difference quotient
``(f(x) - f(sigma x)) / <x, v>`` is a coefficient shift after a rotation.

Univariate polynomials use :class:`numpy.polynomial.Polynomial` directly.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as npoly
from scipy.signal import convolve2d

from .errors import NotDivisible

UniPoly = Polynomial


def _trim(c: np.ndarray) -> np.ndarray:
    """Drop trailing rows/columns that are exactly zero."""
    nz = np.nonzero(c)
    if len(nz[0]) == 0:
        return np.zeros((0, 0))
    return c[: nz[0].max() + 1, : nz[1].max() + 1]


class BiPoly:
    """Immutable dense bivariate polynomial."""

    __slots__ = ("_c", "_deg")

    def __init__(self, coeffs=None):
        if coeffs is None:
            c = np.zeros((0, 0))
        else:
            c = np.array(coeffs, dtype=float, ndmin=2)
            if c.ndim != 2:
                raise ValueError("coefficient grid must be two-dimensional")
            c = _trim(c)
        c.setflags(write=False)
        self._c = c
        self._deg = self._compute_degree(c)

    @staticmethod
    def _compute_degree(c):
        nz = np.nonzero(c)
        if len(nz[0]) == 0:
            return -np.inf
        return int((nz[0] + nz[1]).max())

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, a):
        return cls([[a]])

    @classmethod
    def x1(cls):
        return cls([[0.0], [1.0]])

    @classmethod
    def x2(cls):
        return cls([[0.0, 1.0]])

    @classmethod
    def monomial(cls, i, j, a=1.0):
        c = np.zeros((i + 1, j + 1))
        c[i, j] = a
        return cls(c)

    @classmethod
    def linear_form(cls, v):
        return cls([[0.0, v[1]], [v[0], 0.0]])

    @classmethod
    def from_homogeneous(cls, vec):
        """Homogeneous polynomial ``sum_s vec[s] x1^s x2^(n-s)``."""
        vec = np.asarray(vec, dtype=float)
        n = len(vec) - 1
        c = np.zeros((n + 1, n + 1))
        c[np.arange(n + 1), n - np.arange(n + 1)] = vec
        return cls(c)

    # basic properties -------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self):
        return self._deg

    def is_zero(self) -> bool:
        return self._c.size == 0

    def max_abs(self) -> float:
        return float(np.abs(self._c).max()) if self._c.size else 0.0

    def coefficient(self, i, j) -> float:
        c = self._c
        return float(c[i, j]) if i < c.shape[0] and j < c.shape[1] else 0.0

    def grid(self, shape) -> np.ndarray:
        out = np.zeros(shape)
        a, b = self._c.shape
        out[:a, :b] = self._c
        return out

    def homogeneous_part(self, n) -> np.ndarray:
        """Coefficients of ``x1^s x2^(n-s)`` for ``s = 0..n``."""
        return np.array([self.coefficient(s, n - s) for s in range(n + 1)])

    def is_homogeneous(self, n, tol=0.0) -> bool:
        i, j = np.indices(self._c.shape)
        off = np.abs(self._c[(i + j) != n])
        return off.size == 0 or off.max() <= tol

    def __repr__(self):
        terms = []
        for (i, j), a in np.ndenumerate(self._c):
            if a != 0:
                terms.append(f"{a:+.6g}*x1^{i}*x2^{j}")
        return "BiPoly(" + (" ".join(terms) if terms else "0") + ")"

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if np.isscalar(other):
            return BiPoly.constant(float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        shape = tuple(np.maximum(self._c.shape, other._c.shape))
        return BiPoly(self.grid(shape) + other.grid(shape))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, a: float) -> "BiPoly":
        return BiPoly(a * self._c)

    def __mul__(self, other):
        if np.isscalar(other):
            return self.scale(float(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return BiPoly()
        return BiPoly(convolve2d(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BiPoly.constant(1.0)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x1, x2=None):
        if x2 is None:
            x = np.asarray(x1, dtype=float)
            x1, x2 = x[..., 0], x[..., 1]
        if self.is_zero():
            return np.zeros(np.broadcast(np.asarray(x1), np.asarray(x2)).shape)[()]
        return npoly.polyval2d(x1, x2, self._c)

    def allclose(self, other, atol=1e-12) -> bool:
        return (self - other).max_abs() <= atol

    # calculus and substitutions ----------------------------------------
    def partial(self, axis: int) -> "BiPoly":
        """Exact partial derivative along axis 1 or 2."""
        if axis not in (1, 2):
            raise ValueError("axis must be 1 or 2")
        c = self._c
        if c.size == 0:
            return BiPoly()
        if axis == 1:
            if c.shape[0] < 2:
                return BiPoly()
            return BiPoly(c[1:, :] * np.arange(1, c.shape[0])[:, None])
        if c.shape[1] < 2:
            return BiPoly()
        return BiPoly(c[:, 1:] * np.arange(1, c.shape[1])[None, :])

    def compose_linear(self, M) -> "BiPoly":
        """Return the polynomial ``x -> self(M @ x)``."""
        if self.is_zero():
            return BiPoly()
        M = np.asarray(M, dtype=float)
        key = tuple(M.ravel())
        c = self._c
        dmax = c.shape[0] + c.shape[1] - 2
        out = np.zeros((dmax + 1, dmax + 1))
        for n in range(dmax + 1):
            s = np.arange(max(0, n - c.shape[1] + 1), min(n, c.shape[0] - 1) + 1)
            if len(s) == 0:
                continue
            vec = np.zeros(n + 1)
            vec[s] = c[s, n - s]
            if not vec.any():
                continue
            new = _substitution_matrix(key, n) @ vec
            out[np.arange(n + 1), n - np.arange(n + 1)] += new
        return BiPoly(out)

    def divide_by_root_form(self, v, scale: float | None = None, rtol: float = 1e-12) -> "BiPoly":
        """Exact quotient by the linear form ``<x, v>`` for a unit vector ``v``.

        Coordinates are rotated so that ``v`` becomes ``e1``, the factor
        ``y1`` is stripped by an index shift, and the result is rotated back.
        The residual of ``q * <x, v> - self`` is checked against
        ``rtol * max(|self|_inf, scale)``; ``scale`` lets callers supply the
        magnitude of the polynomial the numerator was formed from, since a
        numerator that nearly cancels carries absolute, not relative, error.
        """
        if self.is_zero():
            return BiPoly()
        v = np.asarray(v, dtype=float)
        v = v / np.hypot(v[0], v[1])
        # R maps v to e1; x = R^T y
        R = np.array([[v[0], v[1]], [-v[1], v[0]]])
        g = self.compose_linear(R.T)
        c = g.coeffs
        h = BiPoly(c[1:, :]) if c.shape[0] > 1 else BiPoly()
        q = h.compose_linear(R)
        resid = (q * BiPoly.linear_form(v) - self).max_abs()
        ref = max(self.max_abs(), scale or 0.0)
        if resid > rtol * ref:
            raise NotDivisible(
                f"residual {resid:.3e} exceeds {rtol:.1e} x {ref:.3e}; "
                "numerator does not vanish on the line <x, v> = 0"
            )
        return q


@lru_cache(maxsize=4096)
def _substitution_matrix(key, n):
    """Action of ``x -> M x`` on homogeneous degree-``n`` coefficient vectors."""
    a, b, c, d = key
    # (Mx)_1 = a x1 + b x2, (Mx)_2 = c x1 + d x2, vectors indexed by power of x1
    def power(p, q, e):
        return np.array([comb(e, s) * p**s * q ** (e - s) for s in range(e + 1)])

    S = np.zeros((n + 1, n + 1))
    for s in range(n + 1):
        S[:, s] = np.convolve(power(a, b, s), power(c, d, n - s))
    S.setflags(write=False)
    return S


def ridge_power(direction, n: int) -> BiPoly:
    """The homogeneous polynomial ``<x, direction>**n``."""
    a, b = float(direction[0]), float(direction[1])
    return BiPoly.from_homogeneous([comb(n, s) * a**s * b ** (n - s) for s in range(n + 1)])


def compose_profile(f: Polynomial, direction) -> BiPoly:
    """The ridge polynomial ``x -> f(<x, direction>)``."""
    out = BiPoly()
    for n, a in enumerate(f.coef):
        if a != 0:
            out = out + ridge_power(direction, n).scale(a)
    return out

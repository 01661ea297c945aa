"""Geometry of the dihedral group I_k.

The positive roots are ``v_j = (sin(j*pi/k), -cos(j*pi/k))`` for
``0 <= j <= k-1`` and the reflection through the line orthogonal to ``v_j``
is ``sigma_j x = x - 2 <x, v_j> v_j``.  In polar coordinates the reflection
sends the angle ``theta`` to ``2*j*pi/k - theta``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameter


@dataclass(frozen=True)
class DihedralGroup:
    """Roots and reflections of I_k, computed once at construction."""

    k: int
    roots: np.ndarray = field(repr=False)
    reflections: np.ndarray = field(repr=False)

    def __hash__(self):
        return hash(("I", self.k))

    def __eq__(self, other):
        return isinstance(other, DihedralGroup) and other.k == self.k

    @property
    def order(self) -> int:
        return 2 * self.k

    def _check(self, j: int) -> None:
        if not (0 <= j < self.k):
            raise IndexError(f"root index {j} outside [0, {self.k - 1}]")

    def root(self, j: int) -> np.ndarray:
        self._check(j)
        return self.roots[j]

    def reflection(self, j: int) -> np.ndarray:
        self._check(j)
        return self.reflections[j]

    def conjugacy_classes(self) -> list[list[int]]:
        """Root indices grouped by conjugacy class of their reflections."""
        if self.k % 2 == 0:
            return [list(range(0, self.k, 2)), list(range(1, self.k, 2))]
        return [list(range(self.k))]


def make_group(k: int) -> DihedralGroup:
    """Build I_k for ``k >= 2``."""
    if int(k) != k or k < 2:
        raise InvalidParameter(f"dihedral order k must be an integer >= 2, got {k!r}")
    k = int(k)
    ang = np.arange(k) * np.pi / k
    roots = np.column_stack([np.sin(ang), -np.cos(ang)])
    # exact zeros where the angle is a multiple of pi/2 keep reflections clean
    roots[np.abs(roots) < 1e-16] = 0.0
    refl = np.eye(2)[None, :, :] - 2.0 * roots[:, :, None] * roots[:, None, :]
    roots.setflags(write=False)
    refl.setflags(write=False)
    return DihedralGroup(k, roots, refl)


def reflect(g: DihedralGroup, j: int, x) -> np.ndarray:
    """Apply ``sigma_j`` to a point (or an array of points along the last axis)."""
    x = np.asarray(x, dtype=float)
    v = g.root(j)
    return x - 2.0 * (x @ v)[..., None] * v


def root_pairing(g: DihedralGroup, j: int, x) -> float | np.ndarray:
    """Return ``<x, v_j>``; in polar form this is ``r sin(j*pi/k - theta)``."""
    return np.asarray(x, dtype=float) @ g.root(j)


@dataclass(frozen=True)
class Vertex:
    """Polygon vertex ``y_{p,k} = (cos(p*pi/k), sin(p*pi/k))``."""

    k: int
    p: int

    @property
    def angle(self) -> float:
        return self.p * np.pi / self.k

    @property
    def point(self) -> np.ndarray:
        return np.array([np.cos(self.angle), np.sin(self.angle)])


def vertex(k: int, p: int) -> Vertex:
    if k < 1 or not (0 <= p <= 2 * k - 1):
        raise InvalidParameter(f"vertex index p={p} outside [0, {2 * k - 1}]")
    return Vertex(int(k), int(p))

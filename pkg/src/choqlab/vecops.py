"""Vector operators: scalar cuts, clamps, sign parts, comonotonicity, sorting
chains and interval membership.

All functions are pure and return new arrays.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, NegativeCutError


def as_vector(x, n: int | None = None) -> np.ndarray:
    """Coerce ``x`` to a finite 1-D float array, optionally of length ``n``."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise DimensionError(f"expected a nonempty 1-D vector, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise DimensionError(f"expected a vector of length {n}, got {arr.shape[0]}")
    if not np.isfinite(arr).all():
        raise ValueError("vector components must be finite")
    return arr


def meet_scalar(x, c: float) -> np.ndarray:
    """Componentwise ``min(x_i, c)``."""
    return np.minimum(as_vector(x), c)


def join_scalar(x, c: float) -> np.ndarray:
    """Componentwise ``max(x_i, c)``."""
    return np.maximum(as_vector(x), c)


def cut_above(x, c: float) -> np.ndarray:
    """The part of ``x`` above level ``c``: ``x - min(x, c)``, nonnegative."""
    x = as_vector(x)
    return x - np.minimum(x, c)


def cut_below(x, c: float) -> np.ndarray:
    """The part of ``x`` below level ``c``: ``x - max(x, c)``, nonpositive."""
    x = as_vector(x)
    return x - np.maximum(x, c)


def med_clamp(x, c: float) -> np.ndarray:
    """Componentwise middle value of ``{-c, x_i, c}``."""
    if c < 0:
        raise NegativeCutError(f"clamp level must be nonnegative, got {c}")
    return np.clip(as_vector(x), -c, c)


def pos_part(x) -> np.ndarray:
    return np.maximum(as_vector(x), 0.0)


def neg_part(x) -> np.ndarray:
    return np.maximum(-as_vector(x), 0.0)


def are_comonotonic(x, y) -> bool:
    """True iff no pair of coordinates is ordered oppositely in ``x`` and ``y``.

    This pairwise test, ``(x_i - x_j) * (y_i - y_j) >= 0`` for all ``i < j``,
    is equivalent to both vectors being sorted by one common permutation.
    """
    x = as_vector(x)
    y = as_vector(y)
    if x.shape != y.shape:
        raise DimensionError(f"length mismatch: {x.shape[0]} vs {y.shape[0]}")
    dx = np.sign(x[:, None] - x[None, :])
    dy = np.sign(y[:, None] - y[None, :])
    return bool(np.all(dx * dy >= 0))


@dataclass(frozen=True)
class SortChain:
    """A sorting permutation of ``x`` with its upper and lower chains.

    Indices are 0-based.  ``sigma[k]`` is the coordinate holding the
    ``(k+1)``-th smallest value.  ``upper[k]`` is the bitmask of
    ``{sigma[k], ..., sigma[n-1]}`` for ``k = 0..n`` (``upper[n] == 0``) and
    ``lower[k]`` the bitmask of ``{sigma[0], ..., sigma[k-1]}`` for
    ``k = 0..n`` (``lower[0] == 0``).  ``split`` is the number of strictly
    negative components; zeros count on the nonnegative side.
    """

    sigma: tuple[int, ...]
    upper: tuple[int, ...]
    lower: tuple[int, ...]
    split: int
    sorted_values: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.sigma)


def sort_chain(x, sigma: Sequence[int] | None = None) -> SortChain:
    """Sort ``x`` nondecreasingly, ties broken by ascending index.

    A different valid ``sigma`` may be forced; it must sort ``x``.
    """
    xl = as_vector(x).tolist()
    n = len(xl)
    if sigma is None:
        order = sorted(range(n), key=xl.__getitem__)
    else:
        order = [int(i) for i in sigma]
        if sorted(order) != list(range(n)):
            raise ValueError(f"{list(sigma)} is not a permutation of range({n})")
        if any(xl[order[k]] > xl[order[k + 1]] for k in range(n - 1)):
            raise ValueError("forced permutation does not sort the vector")
    bits = [1 << i for i in order]
    upper = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        upper[k] = upper[k + 1] | bits[k]
    lower = [0] * (n + 1)
    for k in range(n):
        lower[k + 1] = lower[k] | bits[k]
    xs = tuple(xl[i] for i in order)
    split = sum(1 for v in xs if v < 0)
    return SortChain(tuple(order), tuple(upper), tuple(lower), split, xs)


_KINDS = ("full_line", "nonneg", "nonpos", "centered", "box")


@dataclass(frozen=True)
class DomainSpec:
    """A closed real interval ``[lo, hi]`` containing 0, possibly unbounded.

    Use the constructors :meth:`full_line`, :meth:`nonneg`, :meth:`nonpos`,
    :meth:`centered` and :meth:`box`.
    """

    kind: str
    lo: float
    hi: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if not (self.lo <= 0.0 <= self.hi) or not self.lo < self.hi:
            raise ValueError(f"[{self.lo}, {self.hi}] must be nontrivial and contain 0")

    @classmethod
    def full_line(cls) -> "DomainSpec":
        return cls("full_line", -math.inf, math.inf)

    @classmethod
    def nonneg(cls) -> "DomainSpec":
        return cls("nonneg", 0.0, math.inf)

    @classmethod
    def nonpos(cls) -> "DomainSpec":
        return cls("nonpos", -math.inf, 0.0)

    @classmethod
    def centered(cls, a: float) -> "DomainSpec":
        if not a > 0:
            raise ValueError(f"centered half-width must be positive, got {a}")
        return cls("centered", -float(a), float(a))

    @classmethod
    def box(cls, lo: float, hi: float) -> "DomainSpec":
        return cls("box", float(lo), float(hi))

    @property
    def is_centered(self) -> bool:
        """Symmetric about 0 (the full line counts)."""
        return self.lo == -self.hi

    def positive_side(self) -> "DomainSpec":
        """``I+ = I intersected with [0, inf)``."""
        return DomainSpec("box", 0.0, self.hi) if self.hi > 0 else self

    def negative_side(self) -> "DomainSpec":
        """``I- = I intersected with (-inf, 0]``."""
        return DomainSpec("box", self.lo, 0.0) if self.lo < 0 else self

    def sampling_bounds(self, bound: float) -> tuple[float, float]:
        """The interval clipped to ``[-bound, bound]``."""
        return max(self.lo, -bound), min(self.hi, bound)

    def to_dict(self) -> dict:
        if self.kind == "centered":
            return {"kind": "centered", "a": self.hi}
        if self.kind == "box":
            return {"kind": "box", "lo": self.lo, "hi": self.hi}
        return {"kind": self.kind}

    @classmethod
    def from_dict(cls, data: dict) -> "DomainSpec":
        kind = data.get("kind", "box" if "lo" in data else None)
        if kind == "centered":
            return cls.centered(float(data["a"]))
        if kind == "box":
            return cls.box(float(data["lo"]), float(data["hi"]))
        if kind in ("full_line", "nonneg", "nonpos"):
            return getattr(cls, kind)()
        raise ValueError(f"cannot parse domain {data!r}")

    @classmethod
    def parse(cls, text: str) -> "DomainSpec":
        """Parse ``full_line``, ``nonneg``, ``nonpos``, ``centered:A``,
        ``box:LO,HI`` or a JSON object."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_dict(json.loads(text))
        name, _, arg = text.partition(":")
        if name in ("full", "full_line", "R"):
            return cls.full_line()
        if name in ("nonneg", "nonpos"):
            return getattr(cls, name)()
        if name == "centered":
            return cls.centered(float(arg))
        if name == "box":
            lo, hi = arg.split(",")
            return cls.box(float(lo), float(hi))
        raise ValueError(f"cannot parse domain {text!r}")


def in_domain(x, d: DomainSpec) -> bool:
    """Membership of a scalar, or of every component of a vector."""
    if isinstance(x, (int, float)):
        return d.lo <= x <= d.hi
    arr = np.asarray(x, dtype=float)
    if arr.size == 0:
        return True
    return bool(d.lo <= arr.min() and arr.max() <= d.hi)

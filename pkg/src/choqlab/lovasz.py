"""Lovász extensions, symmetric Lovász extensions and the two-sided
(horizontally median-additive) class, with diagonal sections and the
reconstruction of a function from its sections along the lines ``t * 1_A``.

Every extension object is callable on a vector, so it can be handed to the
checkers in :mod:`choqlab.axioms` as a black box.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, DomainError
from .setfn import MAX_N, SetFunction, indicator, is_capacity
from .vecops import SortChain, as_vector, neg_part, pos_part, sort_chain


@dataclass(frozen=True)
class LovaszExtension:
    """The Lovász extension ``f_phi``: affine on every order simplex and equal
    to ``phi`` on the vertices of the unit cube."""

    phi: SetFunction

    @property
    def n(self) -> int:
        return self.phi.n

    def __call__(self, x) -> float:
        return eval_lovasz(self, x)

    def to_dict(self) -> dict:
        return {"type": "lovasz", "phi": self.phi.to_dict()}


@dataclass(frozen=True)
class SymmetricLovaszExtension:
    """``f(0) + f(x+) - f(x-)`` where ``f`` is the Lovász extension of ``phi``."""

    phi: SetFunction

    @property
    def n(self) -> int:
        return self.phi.n

    def __call__(self, x) -> float:
        return eval_symmetric(self, x)

    def to_dict(self) -> dict:
        return {"type": "symmetric", "phi": self.phi.to_dict()}


@dataclass(frozen=True)
class MedianAdditiveExtension:
    """Two-sided piecewise-linear function: slopes from ``phi_pos`` on the
    nonnegative coordinates and from ``phi_neg`` on the negative ones.

    Equivalently ``x -> f_pos(x+) - f_neg(x-)``.  With ``phi_pos == phi_neg``
    this is the symmetric Lovász extension of that set function.
    """

    phi_pos: SetFunction
    phi_neg: SetFunction

    def __post_init__(self):
        if self.phi_pos.n != self.phi_neg.n:
            raise DimensionError(f"phi_pos has n={self.phi_pos.n}, phi_neg has n={self.phi_neg.n}")
        if self.phi_pos.values[0] != 0.0 or self.phi_neg.values[0] != 0.0:
            raise ValueError("phi_pos and phi_neg must vanish at the empty set")

    @property
    def n(self) -> int:
        return self.phi_pos.n

    def __call__(self, x) -> float:
        return eval_median_additive(self, x)

    def to_dict(self) -> dict:
        return {"type": "median", "phi": self.phi_pos.to_dict(), "phi_neg": self.phi_neg.to_dict()}


Extension = LovaszExtension | SymmetricLovaszExtension | MedianAdditiveExtension


def extension_from_dict(data: dict, *, max_n: int = MAX_N) -> Extension:
    """Inverse of the ``to_dict`` methods."""
    if not isinstance(data, dict) or "phi" not in data:
        raise ValueError("extension object needs 'type' and 'phi' fields")
    kind = data.get("type")
    phi = SetFunction.from_dict(data["phi"], max_n=max_n)
    if kind == "lovasz":
        return LovaszExtension(phi)
    if kind == "symmetric":
        return SymmetricLovaszExtension(phi)
    if kind == "median":
        return MedianAdditiveExtension(phi, SetFunction.from_dict(data["phi_neg"], max_n=max_n))
    raise ValueError(f"unknown extension type {kind!r}")


def _chain(x, n: int, sigma) -> SortChain:
    ch = sort_chain(x, sigma)
    if ch.n != n:
        raise DimensionError(f"expected a vector of length {n}, got {ch.n}")
    return ch


def eval_lovasz(L: LovaszExtension, x, sigma: Sequence[int] | None = None) -> float:
    """Evaluate ``f_phi(x)`` by the telescoping sum along the upper chain.

    With ``x`` sorted as ``x_s1 <= ... <= x_sn``::

        f(x) = phi(empty) + x_s1 * (phi([n]) - phi(empty))
               + sum_i (x_si - x_s(i-1)) * (phi({s_i..s_n}) - phi(empty))

    ``sigma`` forces a particular sorting permutation (useful with ties).
    """
    phi = L.phi.values
    ch = _chain(x, L.n, sigma)
    xs = ch.sorted_values
    # Regrouped so that phi(empty) is weighted by (1 - max x); this keeps the
    # value at every cube vertex exactly equal to phi there.
    total = (1.0 - xs[-1]) * phi[0]
    prev = 0.0
    for k in range(L.n):
        total += (xs[k] - prev) * phi[ch.upper[k]]
        prev = xs[k]
    return float(total)


def eval_lovasz_dual(L: LovaszExtension, x, sigma: Sequence[int] | None = None) -> float:
    """Evaluate ``f_phi(x)`` by the telescoping sum along the lower chain.

    The slopes are the values of ``f_0 = f - f(0)`` at ``-1_B`` for the lower
    sets ``B``; for a Lovász extension these are
    ``phi(complement of B) - phi([n])``, so no second table is stored.
    """
    phi = L.phi.values
    full = L.phi.full
    ch = _chain(x, L.n, sigma)
    xs = ch.sorted_values
    n = L.n
    total = xs[n - 1] * (phi[full] - phi[0])
    for k in range(n - 1):
        below = ch.lower[k + 1]
        total += (xs[k + 1] - xs[k]) * (phi[full ^ below] - phi[full])
    return float(phi[0] + total)


def eval_symmetric(S: SymmetricLovaszExtension, x) -> float:
    """``f(0) + f(x+) - f(x-)`` through :func:`eval_lovasz`."""
    x = as_vector(x, S.n)
    L = LovaszExtension(S.phi)
    return float(S.phi.values[0] + eval_lovasz(L, pos_part(x)) - eval_lovasz(L, neg_part(x)))


def _two_sided(ch: SortChain, pos_slope, neg_slope) -> float:
    # Positive coordinates telescope up the upper chain from 0, negative ones
    # down the lower chain from 0; p = number of negative coordinates.
    xs = ch.sorted_values
    n = ch.n
    p = ch.split
    total = 0.0
    if p < n:
        total += xs[p] * pos_slope[ch.upper[p]]
        for k in range(p + 1, n):
            total += (xs[k] - xs[k - 1]) * pos_slope[ch.upper[k]]
    if p > 0:
        total += xs[p - 1] * neg_slope[ch.lower[p]]
        for k in range(p - 1):
            total += (xs[k] - xs[k + 1]) * neg_slope[ch.lower[k + 1]]
    return total


def eval_symmetric_telescoping(
    S: SymmetricLovaszExtension, x, sigma: Sequence[int] | None = None
) -> float:
    """Symmetric extension via one sorted pass split at the sign change.

    Uses the slopes ``phi(A) - phi(empty)`` on both sides: upper sets for the
    nonnegative coordinates, lower sets for the negative ones.
    """
    ch = _chain(x, S.n, sigma)
    slopes = S.phi.values - S.phi.values[0]
    return float(S.phi.values[0] + _two_sided(ch, slopes, slopes))


def eval_median_additive(
    M: MedianAdditiveExtension, x, sigma: Sequence[int] | None = None
) -> float:
    """Two-sided telescoping sum, slopes ``phi_pos`` above 0 and ``phi_neg`` below."""
    ch = _chain(x, M.n, sigma)
    return float(_two_sided(ch, M.phi_pos.values, M.phi_neg.values))


def diagonal_section(f: Callable, A: int, t: float, n: int | None = None) -> float:
    """``f(t * 1_A)`` for the subset with bitmask ``A``."""
    n = f.n if n is None else n
    return float(f(t * indicator(n, A)))


@dataclass(frozen=True)
class SectionFamily:
    """One-place functions along the lines ``t * 1_A``.

    ``pos(A, t)`` is consulted only for ``t >= 0`` and ``neg(A, t)`` only for
    ``t <= 0``; ``diagonal(t)`` covers the whole line for ``A = [n]``.  The
    callables must be free of side effects.  Nothing here assumes they are
    additive.
    """

    n: int
    pos: Callable[[int, float], float] | None = None
    neg: Callable[[int, float], float] | None = None
    diagonal: Callable[[float], float] | None = None

    def section_pos(self, A: int, t: float) -> float:
        if t < 0:
            raise DomainError(f"positive section of {A:#b} queried at t={t}")
        if self.pos is None:
            raise DomainError("family has no positive sections")
        return float(self.pos(A, t))

    def section_neg(self, A: int, t: float) -> float:
        if t > 0:
            raise DomainError(f"negative section of {A:#b} queried at t={t}")
        if self.neg is None:
            raise DomainError("family has no negative sections")
        return float(self.neg(A, t))

    def section_diagonal(self, t: float) -> float:
        if self.diagonal is None:
            raise DomainError("family has no diagonal section")
        return float(self.diagonal(t))

    @classmethod
    def from_function(cls, f: Callable, n: int | None = None) -> "SectionFamily":
        """Sections of ``f`` itself: ``t -> f(t * 1_A)`` on each line."""
        n = f.n if n is None else n

        def along(A, t):
            return diagonal_section(f, A, t, n)

        full = (1 << n) - 1
        return cls(n, pos=along, neg=along, diagonal=lambda t: along(full, t))

    @classmethod
    def linear(cls, phi_pos: SetFunction, phi_neg: SetFunction | None = None) -> "SectionFamily":
        """Linear sections ``t * phi_pos(A)`` for ``t >= 0`` and
        ``t * phi_neg(A)`` for ``t <= 0``; the diagonal has slope
        ``phi_pos([n])`` everywhere."""
        vp = phi_pos.values
        top = float(vp[phi_pos.full])
        neg = None
        if phi_neg is not None:
            vn = phi_neg.values
            neg = lambda A, t: t * float(vn[A])  # noqa: E731
        return cls(
            phi_pos.n,
            pos=lambda A, t: t * float(vp[A]),
            neg=neg,
            diagonal=lambda t: t * top,
        )


def reconstruct_from_sections(F: SectionFamily, x, mode: str = "min") -> float:
    """Rebuild a value at ``x`` from sections along the chains of ``x``.

    ``mode="min"``: ``diag(x_s1) + sum pos(upper_i, x_si - x_s(i-1))``.
    ``mode="max"``: ``diag(x_sn) + sum neg(lower_i, x_si - x_s(i+1))``.
    ``mode="median"``: positive coordinates through ``pos`` on the upper
    chain, negative ones through ``neg`` on the lower chain.
    """
    ch = _chain(x, F.n, None)
    xs = ch.sorted_values
    n = F.n
    if mode == "min":
        total = F.section_diagonal(xs[0])
        for k in range(1, n):
            total += F.section_pos(ch.upper[k], xs[k] - xs[k - 1])
        return total
    if mode == "max":
        total = F.section_diagonal(xs[n - 1])
        for k in range(n - 1):
            total += F.section_neg(ch.lower[k + 1], xs[k] - xs[k + 1])
        return total
    if mode == "median":
        p = ch.split
        total = 0.0
        if p < n:
            total += F.section_pos(ch.upper[p], xs[p])
            for k in range(p + 1, n):
                total += F.section_pos(ch.upper[k], xs[k] - xs[k - 1])
        if p > 0:
            total += F.section_neg(ch.lower[p], xs[p - 1])
            for k in range(p - 1):
                total += F.section_neg(ch.lower[k + 1], xs[k] - xs[k + 1])
        return total
    raise ValueError(f"mode must be 'min', 'max' or 'median', got {mode!r}")


def is_choquet(L: LovaszExtension) -> bool:
    """A Lovász extension is a Choquet integral iff its set function is a
    capacity (vanishes at the empty set, nondecreasing)."""
    return is_capacity(L.phi)


def is_symmetric_choquet(S: SymmetricLovaszExtension) -> bool:
    """Same criterion for the symmetric extension."""
    return is_capacity(S.phi)

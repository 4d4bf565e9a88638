"""Pseudo-Boolean set functions stored densely over the subset lattice.

A set function on ``[n] = {1, ..., n}`` is held as an array of ``2**n``
reals.  Index ``k`` is the bitmask of a subset ``A``: element ``i`` (1-based)
belongs to ``A`` iff bit ``i - 1`` of ``k`` is set, so

    k = sum(2 ** (i - 1) for i in A)

and ``values[0]`` is the value at the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError

MAX_N = 16

KINDS = ("general", "capacity", "capacity_normalized")


@dataclass(frozen=True, eq=False)
class SetFunction:
    """Values of ``phi`` on all subsets of ``[n]`` in bitmask order.

    Instances are immutable: the value array is stored read-only.  Build them
    with :func:`make_set_function`, which validates the input.
    """

    n: int
    values: np.ndarray

    @property
    def full(self) -> int:
        """Bitmask of ``[n]``."""
        return (1 << self.n) - 1

    def __getitem__(self, mask: int) -> float:
        return float(self.values[mask])

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.n, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"SetFunction(n={self.n}, values={self.values.tolist()!r})"

    def to_dict(self) -> dict:
        return {"n": self.n, "values": [float(v) for v in self.values]}

    @classmethod
    def from_dict(cls, data, *, max_n: int = MAX_N) -> "SetFunction":
        """Parse ``{"n": int, "values": [...]}`` or a bare list of values."""
        if isinstance(data, dict):
            if "values" not in data:
                raise ValueError("set function object needs a 'values' field")
            values = data["values"]
            n = data.get("n")
        else:
            values = data
            n = None
        if n is None:
            size = len(values)
            n = size.bit_length() - 1
            if size < 2 or (1 << n) != size:
                raise DimensionError(f"cannot infer n from {size} values")
        if not isinstance(n, int) or isinstance(n, bool):
            raise DimensionError(f"n must be an integer, got {n!r}")
        return make_set_function(n, values, max_n=max_n)


@dataclass(frozen=True, eq=False)
class MobiusRepresentation:
    """Möbius coefficients ``m`` with ``phi(B) = sum(m(A) for A subset of B)``."""

    n: int
    coefficients: np.ndarray

    def zeta(self) -> SetFunction:
        """Sum the coefficients back up the lattice."""
        return make_set_function(self.n, _subset_sum(self.coefficients, self.n, +1.0))


def make_set_function(n: int, values: Sequence[float], *, max_n: int = MAX_N) -> SetFunction:
    """Validate and wrap ``values`` as a set function on ``[n]``.

    No normalization is applied; in particular ``values[0]`` may be nonzero.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DimensionError(f"n must be an integer, got {n!r}")
    n = int(n)
    if not 1 <= n <= max_n:
        raise DimensionError(f"n must lie in [1, {max_n}], got {n}")
    arr = np.array(values, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != 1 << n:
        raise DimensionError(f"expected {1 << n} values for n={n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("set function values must be finite")
    arr.setflags(write=False)
    return SetFunction(n, arr)


def popcounts(n: int) -> np.ndarray:
    """Cardinality of every subset of ``[n]``, in bitmask order."""
    masks = np.arange(1 << n)
    counts = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        counts += (masks >> i) & 1
    return counts


def is_capacity(sf: SetFunction) -> bool:
    """True iff ``phi(empty) = 0`` and ``phi`` is nondecreasing under inclusion.

    Monotonicity is checked on covering pairs ``A < A + {i}`` only, which is
    equivalent by transitivity.
    """
    if sf.values[0] != 0.0:
        return False
    masks = np.arange(1 << sf.n)
    for i in range(sf.n):
        bit = 1 << i
        without = masks[(masks & bit) == 0]
        if np.any(sf.values[without] > sf.values[without | bit]):
            return False
    return True


def _subset_sum(values: np.ndarray, n: int, sign: float) -> np.ndarray:
    # In-place butterfly over the n axes of the hypercube; sign=+1 is the zeta
    # transform, sign=-1 its inverse.
    cube = np.array(values, dtype=float).reshape((2,) * n)
    for axis in range(n):
        hi = [slice(None)] * n
        lo = [slice(None)] * n
        hi[axis] = 1
        lo[axis] = 0
        cube[tuple(hi)] += sign * cube[tuple(lo)]
    return cube.reshape(-1)


def mobius_transform(sf: SetFunction) -> MobiusRepresentation:
    """Inclusion-exclusion inversion of ``sf``."""
    coeffs = _subset_sum(sf.values, sf.n, -1.0)
    coeffs.setflags(write=False)
    return MobiusRepresentation(sf.n, coeffs)


def random_set_function(
    n: int, seed: int, kind: str = "capacity", *, max_n: int = MAX_N
) -> SetFunction:
    """Seeded generator for test harnesses.

    ``kind="general"`` draws values uniformly from ``[-1, 1]`` with
    ``phi(empty) = 0``.  ``kind="capacity"`` walks the lattice by increasing
    cardinality (a linear extension of inclusion) and sets each value to the
    largest value of its lower covers plus a nonnegative increment; about a
    fifth of the increments are exactly zero so that flat steps occur.
    ``kind="capacity_normalized"`` rescales a capacity so that ``phi([n]) = 1``.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= max_n:
        raise DimensionError(f"n must lie in [1, {max_n}], got {n!r}")
    rng = np.random.default_rng(seed)
    size = 1 << n
    if kind == "general":
        values = rng.uniform(-1.0, 1.0, size)
        values[0] = 0.0
        return make_set_function(n, values, max_n=max_n)

    values = np.zeros(size)
    masks = np.arange(size)
    counts = popcounts(n)
    increments = rng.uniform(0.0, 1.0, size)
    increments[rng.random(size) < 0.2] = 0.0
    for k in range(1, n + 1):
        layer = masks[counts == k]
        base = np.full(layer.shape, -np.inf)
        for i in range(n):
            bit = 1 << i
            has = (layer & bit) != 0
            base[has] = np.maximum(base[has], values[layer[has] ^ bit])
        values[layer] = base + increments[layer]
    if kind == "capacity_normalized":
        top = values[size - 1]
        if top > 0.0:
            values = values / top
        else:
            values = counts / n
    return make_set_function(n, values, max_n=max_n)


def indicator(n: int, mask: int) -> np.ndarray:
    """The 0/1 vector ``1_A`` of the subset with bitmask ``mask``."""
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=float)


def mask_of(elements, n: int | None = None) -> int:
    """Bitmask of a collection of 1-based elements."""
    mask = 0
    for i in elements:
        if i < 1 or (n is not None and i > n):
            raise ValueError(f"element {i} outside [1, {n}]")
        mask |= 1 << (i - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    """1-based elements of the subset with bitmask ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)

"""Independent evaluation paths used to cross-check the main evaluators.

Nothing here goes through the telescoping code in :mod:`choqlab.lovasz` or the
sampling engine in :mod:`choqlab.axioms`.  These routines are meant to catch
bugs, not to be fast.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .axioms import Verdict, Witness
from .errors import BudgetExceeded, DimensionError, DomainKindError, SingularSystem
from .setfn import SetFunction, mobius_transform
from .vecops import DomainSpec

AFFINE_MAX_N = 10


@dataclass(frozen=True)
class AffineRegion:
    """Affine map ``a0 + a . x`` interpolating ``phi`` on the order simplex of
    ``sigma`` (0-based; ``x[sigma[0]] <= ... <= x[sigma[-1]]``)."""

    sigma: tuple[int, ...]
    coefficients: np.ndarray

    def __call__(self, x) -> float:
        return float(self.coefficients[0] + np.dot(self.coefficients[1:], x))


def _simplex_vertices(n: int, sigma) -> list[list[int]]:
    # The n + 1 cube vertices in the closure of the order simplex: indicator
    # vectors of {sigma[k], ..., sigma[n-1]} for k = 0..n.
    verts = []
    for k in range(n + 1):
        top = set(int(i) for i in sigma[k:])
        verts.append([1 if i in top else 0 for i in range(n)])
    return verts


def affine_region(sf: SetFunction, sigma) -> AffineRegion:
    """Solve the ``(n+1) x (n+1)`` interpolation system for one order simplex."""
    n = sf.n
    if n > AFFINE_MAX_N:
        raise DimensionError(f"affine oracle is limited to n <= {AFFINE_MAX_N}")
    verts = _simplex_vertices(n, sigma)
    system = np.array([[1.0] + [float(v) for v in vert] for vert in verts])
    rhs = np.array([sf.values[sum(1 << i for i in range(n) if vert[i])] for vert in verts])
    try:
        coeffs = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"vertex system for sigma={tuple(sigma)} is singular") from exc
    return AffineRegion(tuple(int(i) for i in sigma), coeffs)


def eval_affine_interpolation(sf: SetFunction, x) -> float:
    """Value at ``x`` of the affine interpolant on the order simplex holding ``x``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (sf.n,):
        raise DimensionError(f"expected a vector of length {sf.n}, got shape {x.shape}")
    sigma = np.argsort(x, kind="stable")
    return affine_region(sf, sigma)(x)


def eval_via_mobius(sf: SetFunction, x) -> float:
    """``sum over A of m(A) * min(x_i for i in A)``, with ``m`` the Möbius
    transform of ``phi`` and ``m(empty) = phi(empty)``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (sf.n,):
        raise DimensionError(f"expected a vector of length {sf.n}, got shape {x.shape}")
    m = mobius_transform(sf).coefficients
    mins = np.empty(1 << sf.n)
    mins[0] = np.inf
    for i in range(sf.n):
        lo = 1 << i
        mins[lo : 2 * lo] = np.minimum(mins[:lo], x[i])
    return float(m[0] + np.dot(m[1:], mins[1:]))


# -- exhaustive sweep --------------------------------------------------------

SWEEP_AXIOMS = (
    "comonotonic",
    "pos-comonotonic",
    "neg-comonotonic",
    "hmin",
    "hmax",
    "pos-hmin",
    "neg-hmax",
    "hmedian",
    "splitting",
    "homogeneity",
    "oddness-pos",
    "diagonal",
)


_CENTERED_ONLY = ("hmedian", "pos-comonotonic", "neg-comonotonic", "pos-hmin", "neg-hmax", "oddness-pos")


def _ordered(grid) -> list[float]:
    return sorted({float(g) for g in grid}, key=lambda v: (abs(v), v < 0))


def brute_force_axiom_sweep(
    f,
    n: int,
    grid,
    axiom: str,
    domain: DomainSpec | None = None,
    *,
    positive_only: bool = False,
    abs_tol: float = 1e-9,
    rel_tol: float = 1e-9,
    budget: int = 10**7,
) -> Verdict:
    """Check ``axiom`` on every grid instance and return the least witness.

    Vectors range over ``grid ** n`` and cut levels or scale factors over
    ``grid``.  Grid values are ordered ``0, 1, -1, 2, -2, ...`` and vectors
    lexicographically in that order; pairs ``(x, x')`` are ordered by
    ``(x != x', x, x')`` so that self-pairs come first.  Instances whose
    evaluation points leave ``domain`` (default: the whole line) are skipped.
    Integer grids keep every operation exact.
    """
    if axiom not in SWEEP_AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}")
    domain = DomainSpec.full_line() if domain is None else domain
    if axiom in _CENTERED_ONLY and not domain.is_centered:
        raise DomainKindError(f"{axiom} is only defined on intervals centered at 0")
    lo, hi = domain.lo, domain.hi
    values = _ordered(grid)
    g = len(values)
    pair = axiom in ("comonotonic", "pos-comonotonic", "neg-comonotonic")
    cost = g ** (2 * n) if pair else g**n * g
    if cost > budget:
        raise BudgetExceeded(f"{axiom} sweep needs {cost} instances, budget is {budget}")

    memo: dict[tuple, float] = {}

    def F(v) -> float:
        key = tuple(float(t) for t in v)
        if key not in memo:
            memo[key] = float(f(np.array(key)))
        return memo[key]

    def inside(v) -> bool:
        return all(lo <= t <= hi for t in v)

    def bad(lhs, rhs) -> bool:
        return abs(lhs - rhs) > abs_tol + rel_tol * max(abs(lhs), abs(rhs))

    vectors = [list(v) for v in itertools.product(values, repeat=n)]
    nonneg = [v for v in vectors if all(t >= 0 for t in v)]
    nonpos = [v for v in vectors if all(t <= 0 for t in v)]

    def instances():
        if pair:
            pool = {"comonotonic": vectors, "pos-comonotonic": nonneg, "neg-comonotonic": nonpos}[axiom]
            ordered = [(x, x) for x in pool]
            ordered += [(x, y) for x in pool for y in pool if x != y]
            for x, y in ordered:
                if not all((x[i] - x[j]) * (y[i] - y[j]) >= 0 for i in range(n) for j in range(i + 1, n)):
                    continue
                s = [a + b for a, b in zip(x, y)]
                yield {"x": x, "x_prime": y}, [(1, s)], [(1, x), (1, y)]
        elif axiom in ("hmin", "pos-hmin", "hmax", "neg-hmax", "hmedian"):
            pool = {"pos-hmin": nonneg, "neg-hmax": nonpos}.get(axiom, vectors)
            for c in values:
                if axiom in ("pos-hmin", "hmedian") and c < 0:
                    continue
                if axiom == "neg-hmax" and c > 0:
                    continue
                for x in pool:
                    if axiom in ("hmin", "pos-hmin"):
                        low = [min(t, c) for t in x]
                        rhs = [(1, low), (1, [t - m for t, m in zip(x, low)])]
                    elif axiom in ("hmax", "neg-hmax"):
                        up = [max(t, c) for t in x]
                        rhs = [(1, up), (1, [t - m for t, m in zip(x, up)])]
                    else:
                        med = [max(-c, min(t, c)) for t in x]
                        above = [t - min(t, c) for t in x]
                        below = [t - max(t, -c) for t in x]
                        rhs = [(1, med), (1, above), (1, below)]
                    yield {"x": x, "c": c}, [(1, x)], rhs
        elif axiom == "splitting":
            for x in vectors:
                yield {"x": x}, [(1, x)], [(1, [max(t, 0.0) for t in x]), (1, [min(t, 0.0) for t in x])]
        elif axiom == "homogeneity":
            for c in values:
                if positive_only and c <= 0:
                    continue
                for x in vectors:
                    yield {"x": x, "c": c}, [(1, [c * t for t in x])], [(c, x)]
        elif axiom == "oddness-pos":
            zero = [0.0] * n
            for x in nonneg:
                yield {"x": x}, [(1, [-t for t in x]), (-1, zero)], [(-1, x), (1, zero)]
        else:  # diagonal
            full = (1 << n) - 1
            for A in range(1, full + 1):
                e = [float((A >> i) & 1) for i in range(n)]
                for t in values:
                    for u in values:
                        same_sign = (t >= 0 and u >= 0) or (t <= 0 and u <= 0)
                        if not same_sign and A != full:
                            continue
                        yield (
                            {"A": A, "t": t, "t_prime": u},
                            [(1, [(t + u) * a for a in e])],
                            [(1, [t * a for a in e]), (1, [u * a for a in e])],
                        )
            for t in values:
                yield {"A": full, "t": t, "odd": True}, [(1, [-t] * n)], [(-1, [t] * n)]

    count = 0
    for index, (inputs, lhs_terms, rhs_terms) in enumerate(instances()):
        if not all(inside(p) for _, p in lhs_terms + rhs_terms):
            continue
        lhs = math.fsum(a * F(p) for a, p in lhs_terms)
        rhs = math.fsum(b * F(p) for b, p in rhs_terms)
        count += 1
        if bad(lhs, rhs):
            w = Witness(inputs, lhs, rhs, abs(lhs - rhs), "sweep", index)
            return Verdict(axiom, False, count, 0, w)
    return Verdict(axiom, True, count, 0, None)

"""Black-box checkers for the additivity axioms.

Every axiom is an identity ``sum(a_j f(p_j)) == sum(b_k f(q_k))`` over
instances drawn from an interval ``I``.  A checker runs, in order,

1. caller-supplied probe instances,
2. a deterministic sweep over a small integer lattice (``n <= 4`` by default),
3. seeded random trials in fixed-size chunks,

and stops at the first violation, which it reports as a :class:`Witness`.
An instance is only evaluated when every point it touches lies in ``I^n``;
that is exactly the closure precondition of each axiom.

Random chunk ``i`` draws from ``numpy.random.default_rng([seed, i])``, so a
verdict does not depend on how many workers ran the chunks.

The evaluated function must accept a 1-D float array and expose its arity as
``f.n`` (or the arity is passed explicitly).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Sequence

import numpy as np

from .errors import DomainKindError, SamplerExhausted
from .vecops import (
    DomainSpec,
    cut_above,
    cut_below,
    in_domain,
    join_scalar,
    med_clamp,
    meet_scalar,
    neg_part,
    pos_part,
)

AXIOMS = (
    "comonotonic",
    "hmin",
    "hmax",
    "hmedian",
    "pos-comonotonic",
    "neg-comonotonic",
    "pos-hmin",
    "neg-hmax",
    "splitting",
    "diagonal",
    "homogeneity",
    "oddness-pos",
)

_CENTERED_ONLY = {"hmedian", "pos-comonotonic", "neg-comonotonic", "pos-hmin", "neg-hmax", "oddness-pos"}


@dataclass(frozen=True)
class CheckConfig:
    """Sampling and tolerance settings shared by all checkers.

    ``bound`` caps the sampled magnitude on unbounded sides of the domain;
    ``grid`` is the value set of the lattice sweep, which runs when
    ``n <= lattice_max_n``.
    """

    domain: DomainSpec = field(default_factory=DomainSpec.full_line)
    trials: int = 10_000
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    seed: int = 0
    bound: float = 10.0
    grid: tuple[float, ...] = (-2.0, -1.0, 0.0, 1.0, 2.0)
    lattice_max_n: int = 4
    chunk_size: int = 250
    jobs: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.chunk_size < 1 or self.jobs < 1:
            raise ValueError("chunk_size and jobs must be positive")

    def violates(self, lhs: float, rhs: float) -> bool:
        gap = abs(lhs - rhs)
        return not gap <= self.abs_tol + self.rel_tol * max(abs(lhs), abs(rhs))


@dataclass(frozen=True)
class Witness:
    """A violating instance: its inputs, both sides and where it was found."""

    inputs: dict[str, Any]
    lhs: float
    rhs: float
    gap: float
    source: str
    index: int

    def to_dict(self) -> dict:
        return {
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "source": self.source,
            "index": self.index,
        }


@dataclass(frozen=True)
class Verdict:
    axiom: str
    passed: bool
    trials: int
    seed: int
    witness: Witness | None = None
    sub: dict[str, "Verdict"] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "axiom": self.axiom,
            "passed": self.passed,
            "trials": self.trials,
            "seed": self.seed,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }
        if self.sub:
            out["sub"] = {k: v.to_dict() for k, v in self.sub.items()}
        return out


# -- axiom definitions ------------------------------------------------------
#
# terms(instance) -> (lhs_terms, rhs_terms), each a list of (coef, point).

Terms = list[tuple[float, np.ndarray]]


def _comonotonic_terms(x, y):
    return [(1.0, x + y)], [(1.0, x), (1.0, y)]


def _hmin_terms(x, c):
    return [(1.0, x)], [(1.0, meet_scalar(x, c)), (1.0, cut_above(x, c))]


def _hmax_terms(x, c):
    return [(1.0, x)], [(1.0, join_scalar(x, c)), (1.0, cut_below(x, c))]


def _hmedian_terms(x, c):
    return [(1.0, x)], [(1.0, med_clamp(x, c)), (1.0, cut_above(x, c)), (1.0, cut_below(x, -c))]


def _splitting_terms(x):
    return [(1.0, x)], [(1.0, pos_part(x)), (1.0, -neg_part(x))]


def _homogeneity_terms(x, c):
    return [(1.0, c * x)], [(c, x)]


def _oddness_terms(x):
    zero = np.zeros_like(x)
    return [(1.0, -x), (-1.0, zero)], [(-1.0, x), (1.0, zero)]


@dataclass(frozen=True)
class _Axiom:
    name: str
    shape: str  # "pair", "cut", "vector" or "scale"
    terms: Callable[..., tuple[Terms, Terms]]
    vec_side: str = "all"  # which part of I the vectors come from
    cut_side: str = "all"
    positive_scale: bool = False


_DEFS = {
    "comonotonic": _Axiom("comonotonic", "pair", _comonotonic_terms),
    "pos-comonotonic": _Axiom("pos-comonotonic", "pair", _comonotonic_terms, vec_side="pos"),
    "neg-comonotonic": _Axiom("neg-comonotonic", "pair", _comonotonic_terms, vec_side="neg"),
    "hmin": _Axiom("hmin", "cut", _hmin_terms),
    "hmax": _Axiom("hmax", "cut", _hmax_terms),
    "pos-hmin": _Axiom("pos-hmin", "cut", _hmin_terms, vec_side="pos", cut_side="pos"),
    "neg-hmax": _Axiom("neg-hmax", "cut", _hmax_terms, vec_side="neg", cut_side="neg"),
    "hmedian": _Axiom("hmedian", "cut", _hmedian_terms, cut_side="pos"),
    "splitting": _Axiom("splitting", "vector", _splitting_terms),
    "homogeneity": _Axiom("homogeneity", "scale", _homogeneity_terms),
    "positive-homogeneity": _Axiom(
        "positive-homogeneity", "scale", _homogeneity_terms, positive_scale=True
    ),
    "oddness-pos": _Axiom("oddness-pos", "vector", _oddness_terms, vec_side="pos"),
}

_INPUT_NAMES = {
    "pair": ("x", "x_prime"),
    "cut": ("x", "c"),
    "vector": ("x",),
    "scale": ("x", "c"),
}


def _inside(p, domain: DomainSpec) -> bool:
    if domain.lo == -math.inf and domain.hi == math.inf:
        return True
    return in_domain(p, domain)


def _side(domain: DomainSpec, side: str) -> DomainSpec:
    if side == "pos":
        return domain.positive_side()
    if side == "neg":
        return domain.negative_side()
    return domain


def _arity(f, n: int | None) -> int:
    if n is not None:
        return int(n)
    try:
        return int(f.n)
    except AttributeError:
        raise TypeError("pass n explicitly for functions without an 'n' attribute") from None


class _Instance:
    """One concrete instance of an axiom with its admissibility decided."""

    __slots__ = ("args", "lhs_terms", "rhs_terms")

    def __init__(self, ax: _Axiom, args: tuple):
        self.args = args
        self.lhs_terms, self.rhs_terms = ax.terms(*args)

    def points(self):
        for _, p in self.lhs_terms:
            yield p
        for _, p in self.rhs_terms:
            yield p

    def admissible(self, domain: DomainSpec) -> bool:
        return all(_inside(p, domain) for p in self.points())


def _constraints_ok(ax: _Axiom, args: tuple, cfg: CheckConfig) -> bool:
    vdom = _side(cfg.domain, ax.vec_side)
    if ax.shape == "pair":
        x, y = args
        if not (in_domain(x, vdom) and in_domain(y, vdom)):
            return False
        dx = np.sign(x[:, None] - x[None, :])
        dy = np.sign(y[:, None] - y[None, :])
        return bool(np.all(dx * dy >= 0))
    if not in_domain(args[0], vdom):
        return False
    if ax.shape == "cut":
        return in_domain(args[1], _side(cfg.domain, ax.cut_side))
    if ax.shape == "scale" and ax.positive_scale:
        return args[1] > 0
    return True


def _evaluate(f, inst: _Instance, domain: DomainSpec, cache: dict | None):
    def value(p):
        if not _inside(p, domain):
            raise AssertionError(f"closure violated: {p.tolist()} outside the domain")
        if cache is None:
            return float(f(p))
        key = p.tobytes()
        v = cache.get(key)
        if v is None:
            v = cache[key] = float(f(p))
        return v

    lhs = math.fsum(a * value(p) for a, p in inst.lhs_terms)
    rhs = math.fsum(b * value(p) for b, p in inst.rhs_terms)
    return lhs, rhs


def _witness(ax: _Axiom, inst: _Instance, lhs, rhs, source, index) -> Witness:
    inputs = {}
    for name, a in zip(_INPUT_NAMES[ax.shape], inst.args):
        inputs[name] = a.tolist() if isinstance(a, np.ndarray) else float(a)
    return Witness(inputs, lhs, rhs, abs(lhs - rhs), source, index)


# -- lattice sweep ----------------------------------------------------------


def _grid_order(grid: Sequence[float]) -> list[float]:
    # 0 first, then by magnitude, positive before negative at equal magnitude.
    return sorted({float(g) for g in grid}, key=lambda v: (abs(v), v < 0))


def _lattice_instances(ax: _Axiom, n: int, cfg: CheckConfig):
    values = _grid_order(cfg.grid)
    vdom = _side(cfg.domain, ax.vec_side)
    vectors = [
        np.array(v) for v in itertools.product(values, repeat=n) if in_domain(v, vdom)
    ]
    if ax.shape == "vector":
        for x in vectors:
            yield (x,)
    elif ax.shape in ("cut", "scale"):
        cdom = _side(cfg.domain, ax.cut_side) if ax.shape == "cut" else DomainSpec.full_line()
        cuts = [c for c in values if in_domain(c, cdom)]
        if ax.shape == "scale" and ax.positive_scale:
            cuts = [c for c in cuts if c > 0]
        for c in cuts:
            for x in vectors:
                yield (x, c)
    else:
        raise ValueError(ax.shape)


def _lattice_pairs(ax: _Axiom, f, n: int, cfg: CheckConfig, cache: dict):
    """Vectorized sweep of comonotonic pairs.  Returns (witness, count)."""
    values = _grid_order(cfg.grid)
    vdom = _side(cfg.domain, ax.vec_side)
    G = np.array([v for v in itertools.product(values, repeat=n) if in_domain(v, vdom)])
    if G.size == 0:
        return None, 0
    m = G.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    D = np.sign(G[:, iu] - G[:, ju])
    comon = np.all(D[:, None, :] * D[None, :, :] >= 0, axis=2)
    S = G[:, None, :] + G[None, :, :]
    closed = np.all((S >= cfg.domain.lo) & (S <= cfg.domain.hi), axis=2)
    ok = comon & closed
    # Self-pairs first, then lexicographic in the grid order (np.nonzero
    # already enumerates in row-major order).
    diag = np.flatnonzero(np.diagonal(ok))
    off = ok.copy()
    np.fill_diagonal(off, False)
    a_off, b_off = np.nonzero(off)
    a_idx = np.concatenate([diag, a_off])
    b_idx = np.concatenate([diag, b_off])

    fG = np.array([_cached(f, g, cache) for g in G])
    sums = S[a_idx, b_idx]
    # Integer code per sum vector: each coordinate indexes the (small) set of
    # pairwise grid sums, so np.unique runs on a 1-D integer array.
    levels = np.unique(sums)
    if len(levels) ** n < 2**62:
        digits = np.searchsorted(levels, sums)
        codes = digits @ (len(levels) ** np.arange(n, dtype=np.int64))
        _, first, inverse = np.unique(codes, return_index=True, return_inverse=True)
    else:
        _, first, inverse = np.unique(sums, axis=0, return_index=True, return_inverse=True)
    fU = np.array([_cached(f, sums[i], cache) for i in first])
    lhs = fU[inverse.reshape(-1)]
    rhs = fG[a_idx] + fG[b_idx]
    bad = np.abs(lhs - rhs) > cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(lhs), np.abs(rhs))
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return None, int(a_idx.size)
    j = int(hits[0])
    inst = _Instance(ax, (G[a_idx[j]], G[b_idx[j]]))
    lv, rv = _evaluate(f, inst, cfg.domain, cache)
    return _witness(ax, inst, lv, rv, "lattice", j), j + 1


def _cached(f, p: np.ndarray, cache: dict) -> float:
    p = np.ascontiguousarray(p, dtype=float)
    key = p.tobytes()
    v = cache.get(key)
    if v is None:
        v = cache[key] = float(f(p))
    return v


# -- random sampling --------------------------------------------------------


def _draw(rng: np.random.Generator, size: int, lo: float, hi: float) -> np.ndarray:
    # Half the draws are integers so that ties and exact zeros occur.
    ilo, ihi = math.ceil(lo), math.floor(hi)
    if rng.random() < 0.5 and ihi - ilo >= 1:
        return rng.integers(ilo, ihi + 1, size).astype(float)
    return rng.uniform(lo, hi, size)


def _sample(ax: _Axiom, rng: np.random.Generator, n: int, cfg: CheckConfig) -> tuple:
    lo, hi = _side(cfg.domain, ax.vec_side).sampling_bounds(cfg.bound)
    if ax.shape == "pair":
        sigma = rng.permutation(n)
        x = np.empty(n)
        y = np.empty(n)
        x[sigma] = np.sort(_draw(rng, n, lo, hi))
        y[sigma] = np.sort(_draw(rng, n, lo, hi))
        return (x, y)
    x = _draw(rng, n, lo, hi)
    if ax.shape == "vector":
        return (x,)
    if ax.shape == "cut":
        clo, chi = _side(cfg.domain, ax.cut_side).sampling_bounds(cfg.bound)
        u = rng.random()
        if u < 1 / 3:
            c = float(x[rng.integers(n)])
        else:
            c = float(_draw(rng, 1, clo, chi)[0])
        return (x, c)
    # scale
    top = 4.0
    c = float(_draw(rng, 1, 0.0 if ax.positive_scale else -top, top)[0])
    return (x, c)


def _run_chunk(ax: _Axiom, f, n: int, cfg: CheckConfig, chunk: int, size: int):
    rng = np.random.default_rng([cfg.seed, chunk])
    rejected = 0
    done = 0
    while done < size:
        args = _sample(ax, rng, n, cfg)
        if not _constraints_ok(ax, args, cfg):
            rejected += 1
        else:
            inst = _Instance(ax, args)
            if inst.admissible(cfg.domain):
                lhs, rhs = _evaluate(f, inst, cfg.domain, None)
                if cfg.violates(lhs, rhs):
                    index = chunk * cfg.chunk_size + done
                    return _witness(ax, inst, lhs, rhs, "random", index), done + 1
                done += 1
                continue
            rejected += 1
        if rejected > 100 * size:
            raise SamplerExhausted(
                f"{ax.name}: more than {100 * size} rejections in chunk {chunk}"
            )
    return None, done


def _run_random(ax: _Axiom, f, n: int, cfg: CheckConfig):
    sizes = []
    left = cfg.trials
    while left > 0:
        sizes.append(min(cfg.chunk_size, left))
        left -= sizes[-1]
    if cfg.jobs == 1:
        total = 0
        for i, size in enumerate(sizes):
            w, count = _run_chunk(ax, f, n, cfg, i, size)
            total += count
            if w is not None:
                return w, total
        return None, total
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        results = list(pool.map(lambda i: _run_chunk(ax, f, n, cfg, i, sizes[i]), range(len(sizes))))
    total = 0
    for w, count in results:
        total += count
        if w is not None:
            return w, total
    return None, total


# -- engine -----------------------------------------------------------------


def _check(name: str, f, cfg: CheckConfig, n: int | None, probes) -> Verdict:
    ax = _DEFS[name]
    n = _arity(f, n)
    if name in _CENTERED_ONLY and not cfg.domain.is_centered:
        raise DomainKindError(f"{name} is only defined on intervals centered at 0")
    count = 0
    cache: dict = {}
    for i, probe in enumerate(probes or ()):
        args = tuple(np.asarray(a, dtype=float) if np.ndim(a) else float(a) for a in probe)
        if not _constraints_ok(ax, args, cfg):
            raise ValueError(f"probe {probe!r} does not satisfy the {name} hypotheses")
        inst = _Instance(ax, args)
        if not inst.admissible(cfg.domain):
            raise ValueError(f"probe {probe!r} leaves the domain")
        lhs, rhs = _evaluate(f, inst, cfg.domain, cache)
        count += 1
        if cfg.violates(lhs, rhs):
            return Verdict(name, False, count, cfg.seed, _witness(ax, inst, lhs, rhs, "probe", i))

    if n <= cfg.lattice_max_n and cfg.grid:
        if ax.shape == "pair":
            w, c = _lattice_pairs(ax, f, n, cfg, cache)
            count += c
            if w is not None:
                return Verdict(name, False, count, cfg.seed, w)
        else:
            j = 0
            for args in _lattice_instances(ax, n, cfg):
                inst = _Instance(ax, args)
                if not inst.admissible(cfg.domain):
                    continue
                lhs, rhs = _evaluate(f, inst, cfg.domain, cache)
                count += 1
                if cfg.violates(lhs, rhs):
                    w = _witness(ax, inst, lhs, rhs, "lattice", j)
                    return Verdict(name, False, count, cfg.seed, w)
                j += 1

    w, c = _run_random(ax, f, n, cfg)
    count += c
    return Verdict(name, w is None, count, cfg.seed, w)


def check_comonotonic_additivity(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    """``f(x + x') == f(x) + f(x')`` for comonotonic ``x, x'`` with
    ``x + x'`` in the domain."""
    return _check("comonotonic", f, cfg, n, probes)


def check_horizontal_min_additivity(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    """``f(x) == f(x ^ c) + f(x - x ^ c)`` for cut levels ``c`` in the domain."""
    return _check("hmin", f, cfg, n, probes)


def check_horizontal_max_additivity(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    """``f(x) == f(x v c) + f(x - x v c)``."""
    return _check("hmax", f, cfg, n, probes)


def check_horizontal_median_additivity(
    f, cfg: CheckConfig = CheckConfig(), n=None, probes=None
) -> Verdict:
    """Three-way split by the symmetric levels ``-c`` and ``c``, ``c >= 0``.

    Only defined on intervals centered at 0; raises :class:`DomainKindError`
    otherwise.
    """
    return _check("hmedian", f, cfg, n, probes)


def check_positive_comonotonic(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    return _check("pos-comonotonic", f, cfg, n, probes)


def check_negative_comonotonic(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    return _check("neg-comonotonic", f, cfg, n, probes)


def check_positive_horizontal_min(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    return _check("pos-hmin", f, cfg, n, probes)


def check_negative_horizontal_max(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    return _check("neg-hmax", f, cfg, n, probes)


def check_splitting(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    """``f(x) == f(x+) + f(-x-)``."""
    return _check("splitting", f, cfg, n, probes)


def check_homogeneity(
    f, cfg: CheckConfig = CheckConfig(), positive_only: bool = False, n=None, probes=None
) -> Verdict:
    """``f(c x) == c f(x)`` whenever ``c x`` stays in the domain; ``c > 0``
    only when ``positive_only``."""
    name = "positive-homogeneity" if positive_only else "homogeneity"
    return _check(name, f, cfg, n, probes)


def check_oddness_positive_orthant(f, cfg: CheckConfig = CheckConfig(), n=None, probes=None) -> Verdict:
    """``f0(-x) == -f0(x)`` for ``x >= 0``, where ``f0 = f - f(0)``."""
    return _check("oddness-pos", f, cfg, n, probes)


class _Section:
    """``t -> f(t * 1_A)`` as a 1-place black box."""

    n = 1

    def __init__(self, f, A: int, n: int):
        self._f = f
        self._e = np.array([(A >> i) & 1 for i in range(n)], dtype=float)

    def __call__(self, t) -> float:
        return float(self._f(float(np.asarray(t).reshape(-1)[0]) * self._e))


def check_diagonal_sections(
    f,
    cfg: CheckConfig = CheckConfig(),
    n=None,
    subsets: Sequence[int] | None = None,
    sides: Sequence[str] = ("pos", "neg"),
    full_sections: bool = False,
) -> Verdict:
    """Additivity of each section ``t -> f(t 1_A)`` on the requested sides.

    For every ``A`` in ``subsets`` (default: all nonempty subsets) this checks
    additivity on ``I+`` (``"pos"``) and on ``I-`` (``"neg"``), and on all of
    ``I`` when ``full_sections`` is set.  On an interval centered at 0 the
    full diagonal ``t -> f(t 1)`` is also checked for additivity on ``I`` and
    for oddness.  Sub-verdicts are keyed ``"A=<elements>/<side>"``.
    """
    n = _arity(f, n)
    full = (1 << n) - 1
    if subsets is None:
        subsets = range(1, full + 1)
    sub: dict[str, Verdict] = {}

    def label(A):
        return "{" + ",".join(str(i + 1) for i in range(n) if (A >> i) & 1) + "}"

    def sub_cfg(domain):
        return replace(cfg, domain=domain)

    for A in subsets:
        g = _Section(f, A, n)
        for side in sides:
            dom = _side(cfg.domain, side)
            sub[f"A={label(A)}/{side}"] = _check("comonotonic", g, sub_cfg(dom), 1, None)
        if full_sections:
            sub[f"A={label(A)}/full"] = _check("comonotonic", g, sub_cfg(cfg.domain), 1, None)
    if cfg.domain.is_centered:
        g = _Section(f, full, n)
        sub["diagonal/additive"] = _check("comonotonic", g, sub_cfg(cfg.domain), 1, None)
        sub["diagonal/odd"] = _check("oddness-pos", g, sub_cfg(cfg.domain), 1, None)

    first_bad = next((v for v in sub.values() if not v.passed), None)
    return Verdict(
        "diagonal",
        first_bad is None,
        sum(v.trials for v in sub.values()),
        cfg.seed,
        None if first_bad is None else first_bad.witness,
        sub,
    )


_CHECKERS = {
    "comonotonic": check_comonotonic_additivity,
    "hmin": check_horizontal_min_additivity,
    "hmax": check_horizontal_max_additivity,
    "hmedian": check_horizontal_median_additivity,
    "pos-comonotonic": check_positive_comonotonic,
    "neg-comonotonic": check_negative_comonotonic,
    "pos-hmin": check_positive_horizontal_min,
    "neg-hmax": check_negative_horizontal_max,
    "splitting": check_splitting,
    "diagonal": check_diagonal_sections,
    "homogeneity": check_homogeneity,
    "oddness-pos": check_oddness_positive_orthant,
}


def check(axiom: str, f, cfg: CheckConfig = CheckConfig(), **kwargs) -> Verdict:
    """Dispatch by axiom name (see :data:`AXIOMS`)."""
    try:
        fn = _CHECKERS[axiom]
    except KeyError:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {AXIOMS}") from None
    return fn(f, cfg, **kwargs)

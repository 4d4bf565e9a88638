import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from choqlab import (
    DimensionError,
    DomainSpec,
    NegativeCutError,
    are_comonotonic,
    cut_above,
    cut_below,
    in_domain,
    join_scalar,
    med_clamp,
    meet_scalar,
    neg_part,
    pos_part,
    sort_chain,
)
from choqlab.vecops import as_vector
from tests.strategies import coords

X = [-3.0, 5.0]

vecs = st.integers(1, 6).flatmap(lambda n: st.lists(coords, min_size=n, max_size=n)).map(np.array)
int_vecs = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(-100, 100), min_size=n, max_size=n)
).map(lambda v: np.array(v, dtype=float))


class TestCuts:
    def test_meet(self):
        assert meet_scalar(X, 2).tolist() == [-3, 2]

    def test_join(self):
        assert join_scalar(X, -2).tolist() == [-2, 5]

    def test_meet_large_cut_is_identity(self):
        assert meet_scalar(X, 1e300).tolist() == X

    def test_cut_above(self):
        assert cut_above(X, 2).tolist() == [0, 3]

    def test_cut_below(self):
        assert cut_below(X, -2).tolist() == [-1, 0]

    def test_clamp(self):
        assert med_clamp(X, 2).tolist() == [-2, 2]

    def test_clamp_zero(self):
        assert med_clamp(X, 0).tolist() == [0, 0]

    def test_clamp_negative(self):
        with pytest.raises(NegativeCutError):
            med_clamp(X, -1)

    def test_three_way_example(self):
        total = med_clamp(X, 2) + cut_above(X, 2) + cut_below(X, -2)
        assert total.tolist() == X

    def test_min_identity_random(self, rng):
        # Exact on integer data.  On arbitrary doubles x - min(x, c) rounds,
        # so the sum is off by at most one spacing at the scale of max(|x|, |c|).
        for _ in range(10_000):
            x = rng.integers(-50, 51, 5).astype(float)
            c = float(rng.integers(-50, 51))
            assert np.array_equal(meet_scalar(x, c) + cut_above(x, c), x)
        for _ in range(10_000):
            x = rng.uniform(-50, 50, 5)
            c = rng.uniform(-50, 50)
            err = np.abs(meet_scalar(x, c) + cut_above(x, c) - x)
            assert (err <= np.spacing(np.maximum(np.abs(x), abs(c)))).all()

    @given(int_vecs, st.integers(-100, 100).map(float))
    def test_min_max_identities_exact(self, x, c):
        assert np.array_equal(meet_scalar(x, c) + cut_above(x, c), x)
        assert np.array_equal(join_scalar(x, c) + cut_below(x, c), x)

    @given(vecs, st.floats(0, 60))
    def test_median_identity(self, x, c):
        total = med_clamp(x, c) + cut_above(x, c) + cut_below(x, -c)
        assert (np.abs(total - x) <= np.spacing(np.maximum(np.abs(x), c))).all()

    @given(vecs, coords)
    def test_signs(self, x, c):
        assert (cut_above(x, c) >= 0).all()
        assert (cut_below(x, c) <= 0).all()

    def test_pure(self):
        x = np.array(X)
        cut_above(x, 2)
        med_clamp(x, 1)
        assert x.tolist() == X


class TestParts:
    def test_examples(self):
        assert pos_part(X).tolist() == [0, 5]
        assert neg_part(X).tolist() == [3, 0]

    @given(vecs)
    def test_split(self, x):
        assert np.array_equal(pos_part(x) - neg_part(x), x)
        assert (pos_part(x) >= 0).all() and (neg_part(x) >= 0).all()
        assert not np.any((pos_part(x) > 0) & (neg_part(x) > 0))


class TestComonotonic:
    def test_examples(self):
        assert are_comonotonic([1, 2], [3, 7])
        assert not are_comonotonic([1, 2], [3, 1])
        assert are_comonotonic([4, 4, 4], [9, -1, 3])

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            are_comonotonic([1, 2], [1, 2, 3])

    @given(st.integers(1, 5).flatmap(lambda n: st.tuples(
        st.lists(st.integers(-3, 3), min_size=n, max_size=n),
        st.lists(st.integers(-3, 3), min_size=n, max_size=n))))
    def test_common_permutation(self, xy):
        # Pairwise test agrees with "some permutation sorts both".
        x, y = xy
        import itertools

        n = len(x)
        exists = any(
            all(x[p[k]] <= x[p[k + 1]] and y[p[k]] <= y[p[k + 1]] for k in range(n - 1))
            for p in itertools.permutations(range(n))
        )
        assert are_comonotonic(x, y) == exists


    @given(vecs, coords)
    def test_parts_are_comonotonic(self, x, c):
        assert are_comonotonic(meet_scalar(x, c), cut_above(x, c))
        assert are_comonotonic(join_scalar(x, c), cut_below(x, c))

    def test_lattice_pairs_exhaustive(self):
        for n in (1, 2, 3):
            pts = list(itertools.product((-1, 0, 1), repeat=n))
            for x in pts:
                for y in pts:
                    exists = any(
                        all(x[p[k]] <= x[p[k + 1]] and y[p[k]] <= y[p[k + 1]] for k in range(n - 1))
                        for p in itertools.permutations(range(n))
                    )
                    assert are_comonotonic(x, y) == exists

    def test_random_pairs_against_common_sort(self, rng):
        # Sorting by (x, y) lexicographically must also sort y.
        for _ in range(10_000):
            n = int(rng.integers(1, 7))
            x = rng.integers(-3, 4, n).astype(float)
            y = rng.integers(-3, 4, n).astype(float) if rng.random() < 0.5 else rng.uniform(-1, 1, n)
            order = np.lexsort((y, x))
            assert are_comonotonic(x, y) == bool(np.all(np.diff(y[order]) >= 0))


class TestSortChain:
    def test_descending(self):
        ch = sort_chain([5, 3])
        assert ch.sigma == (1, 0)
        assert ch.upper[0] == 0b11 and ch.upper[1] == 0b01 and ch.upper[2] == 0
        assert ch.split == 0

    def test_sign_split(self):
        ch = sort_chain([-3, 5])
        assert ch.sigma == (0, 1) and ch.split == 1

    def test_stable_ties(self):
        assert sort_chain([2, 2, 1]).sigma == (2, 0, 1)

    def test_zero_counts_nonnegative(self):
        assert sort_chain([0, -1, 0]).split == 1

    def test_forced_sigma(self):
        assert sort_chain([2, 2, 1], sigma=[2, 1, 0]).sigma == (2, 1, 0)
        with pytest.raises(ValueError):
            sort_chain([1, 2], sigma=[1, 0])
        with pytest.raises(ValueError):
            sort_chain([1, 2], sigma=[0, 0])

    @given(vecs)
    def test_chain_properties(self, x):
        ch = sort_chain(x)
        n = len(x)
        assert list(ch.sorted_values) == sorted(x.tolist())
        assert ch.upper[0] == ch.lower[n] == (1 << n) - 1
        for k in range(n + 1):
            assert ch.upper[k] | ch.lower[k] == (1 << n) - 1
            assert ch.upper[k] & ch.lower[k] == 0
        assert ch.split == int((x < 0).sum())

    def test_rejects_bad_vectors(self):
        with pytest.raises(DimensionError):
            as_vector([])
        with pytest.raises(DimensionError):
            as_vector([[1, 2]])
        with pytest.raises(ValueError):
            as_vector([1, math.inf])
        with pytest.raises(DimensionError):
            as_vector([1, 2], 3)


class TestDomain:
    def test_membership(self):
        assert in_domain([-1, 2], DomainSpec.centered(3))
        assert not in_domain([-1, 2], DomainSpec.nonneg())

    @pytest.mark.parametrize(
        "d",
        [DomainSpec.full_line(), DomainSpec.nonneg(), DomainSpec.nonpos(), DomainSpec.centered(1), DomainSpec.box(-1, 5)],
    )
    def test_zero_everywhere(self, d):
        assert in_domain(0.0, d)
        assert in_domain(np.zeros(3), d)
        assert DomainSpec.from_dict(d.to_dict()) == d

    def test_invalid(self):
        with pytest.raises(ValueError):
            DomainSpec.box(1, 2)
        with pytest.raises(ValueError):
            DomainSpec.centered(0)

    def test_centered_flag(self):
        assert DomainSpec.full_line().is_centered
        assert DomainSpec.centered(2).is_centered
        assert not DomainSpec.nonneg().is_centered
        assert not DomainSpec.box(-1, 2).is_centered

    def test_sides(self):
        d = DomainSpec.box(-1, 2)
        assert (d.positive_side().lo, d.positive_side().hi) == (0, 2)
        assert (d.negative_side().lo, d.negative_side().hi) == (-1, 0)

    @pytest.mark.parametrize(
        "text, lo, hi",
        [("full_line", -math.inf, math.inf), ("nonneg", 0, math.inf), ("centered:2", -2, 2),
         ("box:-1,3", -1, 3), ('{"kind": "nonpos"}', -math.inf, 0)],
    )
    def test_parse(self, text, lo, hi):
        d = DomainSpec.parse(text)
        assert (d.lo, d.hi) == (lo, hi)

    def test_parse_bad(self):
        with pytest.raises(ValueError):
            DomainSpec.parse("sphere")

    def test_sampling_bounds(self):
        assert DomainSpec.nonneg().sampling_bounds(10) == (0, 10)

import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from tautilt.rep import hom_dim, is_faithful, tau
from tautilt.indec import pool_direct_sum
from tautilt.tilting import (
    Pair, almost_complete_tilting_sets, bongartz_completion_extension, bongartz_completion_torsion,
    complements_of_almost_complete, enumerate_support_tau_tilting, exchange_sequence, fac_mask,
    is_partial_tilting, is_support_tau_tilting, minimal_left_approximation, mutate, mutate_at,
    partial_tilting_sets, positions, regular_pair, torsion_mask, zero_pair,
)

from conftest import pool_for


def brute_force_pairs(pool):
    """Support tau-tilting pairs from matrix-level Hom(X, tau Y), ignoring the pool tables."""
    n = pool.n
    taus = [tau(m.rep) for m in pool.modules]
    ok = [[hom_dim(x.rep, taus[j]) == 0 for j in range(len(pool))] for x in pool.modules]
    found = set()
    for k in range(n + 1):
        for support in itertools.combinations(range(n), n - k):
            allowed = [i for i, m in enumerate(pool.modules) if not any(m.dim[v] for v in support)]
            for ms in itertools.combinations(allowed, k):
                if all(ok[a][b] for a in ms for b in ms):
                    found.add(Pair.of(ms, support))
    return found


@pytest.mark.parametrize("name", ["A2", "A3", "A4", "D4"])
def test_enumeration_matches_brute_force(name):
    pool = pool_for(name)
    assert set(enumerate_support_tau_tilting(pool)) == brute_force_pairs(pool)


@pytest.mark.parametrize("name, count", [
    ("A2", 5), ("A3", 14), ("A4", 42), ("A5", 132),  # Catalan numbers
    ("D4", 50), ("D5", 182),  # (3n-2)/n * C(2n-2, n-1)
    ("E6", 833),
])
def test_support_pair_counts(name, count):
    assert len(enumerate_support_tau_tilting(pool_for(name))) == count


def test_d_series_formula_sanity():
    assert [(3 * n - 2) * comb(2 * n - 2, n - 1) // n for n in (4, 5)] == [50, 182]


def test_a2_pairs_in_canonical_order(a2):
    labels = [p.label(a2) for p in enumerate_support_tau_tilting(a2)]
    assert labels == ["(0,1)+(1,1)", "(1,0)+(1,1)", "(0,1) | P{1}", "(1,0) | P{2}", "0 | P{1,2}"]


def test_kronecker_mutations(k2):
    a = regular_pair(k2)
    p1, p2 = k2.find((1, 0)), k2.find((2, 1))
    new, rec = mutate(k2, a, module=p2)
    assert new == Pair.of([p1], [1])
    assert rec.direction == "left" and rec.added == ("vertex", 1)
    new, rec = mutate(k2, a, module=p1)
    assert new.dims(k2) == [(2, 1), (3, 2)]
    assert rec.is_exact() and rec.middle == {p2: 2}


def test_mutation_at_support_vertex(a2):
    pair = Pair.of([a2.find((1, 0))], [1])
    new, rec = mutate(a2, pair, vertex=1)
    assert rec.direction == "right"
    assert new == Pair.of([a2.find((1, 0)), a2.find((1, 1))])


def test_mutate_argument_errors(a2):
    a = regular_pair(a2)
    with pytest.raises(ValueError):
        mutate(a2, a)
    with pytest.raises(ValueError):
        mutate(a2, a, module=a2.find((0, 1)))
    with pytest.raises(ValueError):
        mutate(a2, a, vertex=0)


@pytest.mark.parametrize("name", ["A3", "D4"])
def test_mutation_is_an_involution(name):
    pool = pool_for(name)
    for p in enumerate_support_tau_tilting(pool):
        for item in positions(p):
            q, rec = mutate_at(pool, p, item)
            assert is_support_tau_tilting(pool, q)
            back, _ = mutate_at(pool, q, rec.added)
            assert back == p
            shrinks = torsion_mask(pool, q) & ~torsion_mask(pool, p) == 0
            assert shrinks == (rec.direction == "left")


def test_torsion_mask_agrees_with_trace_test():
    pool = pool_for("A4")
    for p in enumerate_support_tau_tilting(pool):
        assert torsion_mask(pool, p) == fac_mask(pool, p.modules)


def test_regular_and_zero_extremes(a3):
    full = (1 << len(a3)) - 1
    assert torsion_mask(a3, regular_pair(a3)) == full
    assert torsion_mask(a3, zero_pair(a3)) == 0


def test_minimal_left_approximation_of_kronecker_projective(k2):
    p1, p2 = k2.find((1, 0)), k2.find((2, 1))
    approx = minimal_left_approximation(k2, p1, [p2])
    assert approx.multiplicities == {p2: 2}


def _largest_completion(pool, ms):
    tilting = [p for p in enumerate_support_tau_tilting(pool) if not p.support and set(ms) <= set(p.modules)]
    return max(tilting, key=lambda p: bin(torsion_mask(pool, p)).count("1"))


@pytest.mark.parametrize("name", ["A3", "A4", "D4"])
def test_bongartz_is_the_largest_completion(name):
    pool = pool_for(name)
    for ms in partial_tilting_sets(pool):
        want = _largest_completion(pool, ms)
        assert bongartz_completion_torsion(pool, ms) == want
        assert bongartz_completion_extension(pool, ms) == want


def test_bongartz_of_nothing_is_the_algebra(a3):
    assert bongartz_completion_extension(a3, []) == regular_pair(a3)
    assert bongartz_completion_torsion(a3, []) == regular_pair(a3)


def test_bongartz_rejects_non_rigid():
    pool = pool_for("A2")
    assert not is_partial_tilting(pool, [pool.find((1, 0)), pool.find((0, 1))])
    with pytest.raises(ValueError):
        bongartz_completion_extension(pool, [pool.find((1, 0)), pool.find((0, 1))])


def test_a2_complements_and_exchange(a2):
    p2 = a2.find((1, 1))
    c = complements_of_almost_complete(a2, [p2])
    assert sorted(a2[i].dim for i in c.complements) == [(0, 1), (1, 0)]
    assert c.faithful
    assert a2[c.bongartz].dim == (1, 0)
    seq = exchange_sequence(a2, *c.complements, [p2])
    assert seq.ok, seq.checks
    assert a2[seq.x].dim == (1, 0) and a2[seq.y].dim == (0, 1)
    assert seq.middle == {p2: 1}


def test_unfaithful_almost_complete_has_one_complement(a2):
    c = complements_of_almost_complete(a2, [a2.find((1, 0))])
    assert not c.faithful
    assert [a2[i].dim for i in c.complements] == [(1, 1)]


@pytest.mark.parametrize("name", ["A3", "D4"])
def test_complement_counts(name):
    pool = pool_for(name)
    for ms in almost_complete_tilting_sets(pool):
        c = complements_of_almost_complete(pool, ms)
        assert len(c.complements) in (1, 2)
        assert (len(c.complements) == 2) == is_faithful(pool_direct_sum(pool, ms))
        if len(c.complements) == 2:
            assert exchange_sequence(pool, *c.complements, ms).ok


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_random_mutation_walks_stay_support_tau_tilting(data):
    name = data.draw(st.sampled_from(["A4", "D4", "D5"]))
    pool = pool_for(name)
    p = regular_pair(pool)
    for _ in range(data.draw(st.integers(1, 8))):
        item = data.draw(st.sampled_from(positions(p)))
        p, rec = mutate_at(pool, p, item)
        assert is_support_tau_tilting(pool, p)
        assert rec.is_exact()

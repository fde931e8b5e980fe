"""Generating set searches: d, m, spectrum, bounds, independence."""

import random

import pytest

from groupgen.perm import CapExceeded, Perm, PermGroup, omega
from groupgen import genset


def _sym(n):
    return PermGroup(n, [Perm.from_cycles(n, [tuple(range(n))]),
                         Perm.from_cycles(n, [(0, 1)])])


def _alt(n):
    return PermGroup(n, [Perm.from_cycles(n, [(i, i + 1, i + 2)])
                         for i in range(n - 2)])


def _cyclic(n):
    return PermGroup(n, [Perm.from_cycles(n, [tuple(range(n))])])


def _klein():
    return PermGroup(4, [Perm.from_cycles(4, [(0, 1), (2, 3)]),
                         Perm.from_cycles(4, [(0, 2), (1, 3)])])


def _dihedral4():
    return PermGroup(4, [Perm.from_cycles(4, [(0, 1, 2, 3)]),
                         Perm.from_cycles(4, [(0, 2)])])


def _elementary(p, k):
    return PermGroup(p * k, [
        Perm.from_cycles(p * k, [tuple(range(p * i, p * i + p))])
        for i in range(k)])


def _s3xc2():
    return PermGroup(5, [Perm.from_cycles(5, [(0, 1, 2)]),
                         Perm.from_cycles(5, [(0, 1)]),
                         Perm.from_cycles(5, [(3, 4)])])


def _brute_d(G):
    """Smallest generating set size by exhaustive subsets."""
    from itertools import combinations
    n = G.order()
    if n == 1:
        return 0
    elems = G.elements()
    for k in range(1, 6):
        for combo in combinations(elems, k):
            if PermGroup(G.degree, combo).order() == n:
                return k
    raise AssertionError


def _brute_m(G):
    """Largest independent generating set size by exhaustive subsets."""
    from itertools import combinations
    n = G.order()
    elems = [e for e in G.elements() if not e.is_identity()]
    best = 0
    for k in range(1, 7):
        found = False
        for combo in combinations(elems, k):
            if PermGroup(G.degree, combo).order() != n:
                continue
            if all(PermGroup(G.degree, combo[:i] + combo[i + 1:]).order() < n
                   or combo[i] not in
                   PermGroup(G.degree, combo[:i] + combo[i + 1:]).elements()
                   for i in range(k)):
                # independent: no member inside the span of the others
                ok = True
                for i in range(k):
                    rest = PermGroup(G.degree, combo[:i] + combo[i + 1:])
                    if combo[i] in rest:
                        ok = False
                        break
                if ok:
                    best = max(best, k)
                    found = True
                    break
        if not found and best and k > best:
            break
    return best


def test_d_known_values():
    assert genset.d(PermGroup(2, [])) == 0
    assert genset.d(_cyclic(6)) == 1
    assert genset.d(_cyclic(12)) == 1
    assert genset.d(_klein()) == 2
    assert genset.d(_sym(3)) == 2
    assert genset.d(_sym(4)) == 2
    assert genset.d(_alt(4)) == 2
    assert genset.d(_alt(5)) == 2
    assert genset.d(_dihedral4()) == 2
    assert genset.d(_elementary(2, 3)) == 3
    assert genset.d(_s3xc2()) == 2


def test_d_matches_brute_force():
    rng = random.Random(11)
    cases = [_sym(3), _cyclic(6), _klein(), _dihedral4(), _alt(4), _cyclic(8)]
    for _ in range(6):
        a = Perm(tuple(rng.sample(range(5), 5)))
        b = Perm(tuple(rng.sample(range(5), 5)))
        cases.append(PermGroup(5, [a, b]))
    for G in cases:
        if G.order() <= 60:
            assert genset.d(G) == _brute_d(G)


def test_d_witness_generates():
    for G in [_sym(4), _elementary(2, 3), _cyclic(12), _alt(5)]:
        k, witness = genset.d_with_witness(G)
        assert len(witness) == k
        assert PermGroup(G.degree, witness).order() == G.order()


def test_lower_bound_d():
    assert genset.lower_bound_d(_elementary(2, 3)) == 3
    assert genset.lower_bound_d(_cyclic(6)) == 1
    assert genset.lower_bound_d(_sym(4)) == 2
    assert genset.lower_bound_d(_alt(5)) == 2
    assert genset.lower_bound_d(_klein()) == 2


def test_m_known_values():
    assert genset.m(PermGroup(2, [])) == 0
    assert genset.m(_cyclic(6)) == 2
    assert genset.m(_sym(3)) == 2
    assert genset.m(_sym(4)) == 3
    assert genset.m(_alt(4)) == 2
    assert genset.m(_dihedral4()) == 2
    assert genset.m(_elementary(2, 3)) == 3
    assert genset.m(_cyclic(8)) == 1
    assert genset.m(_s3xc2()) == 3
    assert genset.m(_alt(5)) == 3


def test_m_soluble_fast_path_matches_search():
    for G in [_sym(3), _sym(4), _cyclic(6), _cyclic(12), _dihedral4(),
              _klein(), _elementary(2, 3), _alt(4), _s3xc2(), _cyclic(8)]:
        fast = genset.m(G)
        searched = genset.m(G, force_search=True)
        assert fast == searched, G


def test_m_matches_brute_force():
    for G in [_sym(3), _cyclic(6), _klein(), _cyclic(8), _alt(4)]:
        assert genset.m(G, force_search=True) == _brute_m(G)


def test_m_order_cap():
    big = _elementary(2, 12)
    with pytest.raises(CapExceeded):
        genset.m(big, force_search=True)


def test_bounds():
    b = genset.bounds(_sym(4))
    assert b == {"a": 3, "b": 0, "lower": 3, "upper": 4}
    b = genset.bounds(_alt(5))
    assert b == {"a": 1, "b": 1, "lower": 2, "upper": 4}
    b = genset.bounds(_cyclic(8))
    assert b == {"a": 1, "b": 0, "lower": 1, "upper": 3}
    assert genset.m(_alt(5)) <= b["upper"] or True  # bounds bracket m below
    for G in [_sym(4), _alt(5), _cyclic(8), _s3xc2()]:
        b = genset.bounds(G)
        mm = genset.m(G, force_search=not G.is_soluble())
        assert b["lower"] <= mm <= b["upper"]


def test_spectrum():
    spec = genset.spectrum(_sym(4))
    assert sorted(spec) == [2, 3]
    spec = genset.spectrum(_elementary(2, 3))
    assert sorted(spec) == [3]
    spec = genset.spectrum(_cyclic(6))
    assert sorted(spec) == [1, 2]
    spec = genset.spectrum(_alt(5))
    assert sorted(spec) == [2, 3]
    spec = genset.spectrum(PermGroup(3, []))
    assert sorted(spec) == [0]


def test_spectrum_witnesses_validate():
    for G in [_sym(4), _cyclic(6), _alt(5), _dihedral4(), _s3xc2()]:
        oracle = genset.GenOracle(G)
        for k, witness in genset.spectrum(G).items():
            assert len(witness) == k
            assert genset.is_independent_generating_set(G, witness, oracle)


def test_spectrum_is_an_interval():
    for G in [_sym(4), _cyclic(12), _alt(4), _alt(5), _s3xc2(),
              _elementary(3, 2)]:
        sizes = sorted(genset.spectrum(G))
        assert sizes == list(range(sizes[0], sizes[-1] + 1))
        assert sizes[0] == genset.d(G)


def test_is_independent():
    S4 = _sym(4)
    a = Perm.from_cycles(4, [(0, 1, 2, 3)])
    b = Perm.from_cycles(4, [(0, 1)])
    assert genset.is_independent(S4, [a, b])
    assert genset.is_independent_generating_set(S4, [a, b])
    assert not genset.is_independent(S4, [a, b, a * a])
    assert not genset.is_independent(S4, [S4.identity()])
    assert genset.is_independent(S4, [a])
    assert not genset.is_independent_generating_set(S4, [a])


def test_independence_is_hereditary():
    rng = random.Random(3)
    for G in [_sym(4), _alt(5), _cyclic(12)]:
        oracle = genset.GenOracle(G)
        for k, witness in genset.spectrum(G).items():
            if k < 2:
                continue
            drop = rng.randrange(k)
            subset = witness[:drop] + witness[drop + 1:]
            assert genset.is_independent(G, subset, oracle)


def test_prime_power_restriction_cross_validation():
    # the default search runs over prime power elements only; the
    # unrestricted search must agree
    for G in [_sym(4), _cyclic(6), _cyclic(12), _alt(4), _alt(5), _s3xc2()]:
        assert (genset.m(G, force_search=True, prime_power_only=False)
                == genset.m(G, force_search=True))


def test_search_fallback_without_lattice():
    # a hand-disabled lattice forces the stabilizer chain search path
    G = _sym(4)
    oracle = genset.GenOracle(G)
    oracle.lattice = None
    best = genset._search_max_independent(G, oracle, 3,
                                          genset.DEFAULT_ELEMENT_CAP, None)
    assert best is not None and len(best) == 3
    assert genset.is_independent_generating_set(G, best)
    pair = genset._search_exact_independent(G, oracle, 2,
                                            genset.DEFAULT_ELEMENT_CAP, None)
    assert pair is not None and len(pair) == 2
    assert genset.is_independent_generating_set(G, pair)


def test_oracle_fallback_matches_lattice():
    G = _sym(4)
    with_lat = genset.GenOracle(G)
    assert with_lat.lattice is not None
    without = genset.GenOracle(G)
    without.lattice = None
    rng = random.Random(9)
    elems = G.elements()
    for _ in range(20):
        picks = [rng.choice(elems).images for _ in range(rng.randrange(1, 4))]
        probe = rng.choice(elems).images
        assert with_lat.span_order(picks) == without.span_order(picks)
        assert with_lat.member(picks, probe) == without.member(picks, probe)
        assert with_lat.generates(picks) == without.generates(picks)


def test_d_random_phase_on_large_group():
    # direct square of the degree-5 alternating group: order 3600, too big
    # for the exhaustive phase, but random pairs generate it quickly
    a5 = _alt(5)
    gens = [g.extended(10) for g in a5.gens]
    gens += [Perm(tuple(list(range(5, 10)) + list(range(5))))]
    G = PermGroup(10, gens)
    sq = G.normal_closure([gens[0]])
    assert sq.order() == 3600
    assert genset.d(sq) == 2

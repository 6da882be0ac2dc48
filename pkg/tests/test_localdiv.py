import itertools
import random

import pytest

import oracles
from krdecomp.division import verify_covering
from krdecomp.errors import DomainError
from krdecomp.fuzz import random_monoid
from krdecomp.localdiv import circ_well_defined, local_action_certificate, local_divisor, naive_unfaithful_witness
from krdecomp.tmonoid import StateSet, full_transformation_monoid, generate, is_permutation

T3 = full_transformation_monoid(3)
C_IDEM = T3.element_index((0, 1, 1))


def monoids_up_to(n_states, max_elements, max_gens=2):
    out = []
    for k in range(1, max_gens + 1):
        for gens in itertools.combinations(oracles.all_maps(n_states), k):
            tm = generate(StateSet.range(n_states), list(gens))
            if len(tm) <= max_elements:
                out.append(tm)
    return out


def test_t3_local_divisor_is_t2():
    ld = local_divisor(T3, C_IDEM)
    assert len(ld) == 4
    assert ld.xc == [0, 1]
    t2 = full_transformation_monoid(2)
    carrier, table = oracles.local_divisor_table(T3.elements, (0, 1, 1))
    assert len(carrier) == 4
    pos = {e: i for i, e in enumerate(carrier)}
    brute = [[pos[next(iter(table[a, b]))] for b in carrier] for a in carrier]
    assert oracles.isomorphic(brute, oracles.mult_table(t2.elements)) is not None
    assert oracles.isomorphic(ld.circ_table.tolist(), t2.table.tolist()) is not None


def test_idempotent_circ_is_parent_product():
    ld = local_divisor(T3, C_IDEM)
    for i, a in enumerate(ld.carrier):
        for j, b in enumerate(ld.carrier):
            assert ld.carrier[ld.circ(i, j)] == T3.mul(a, b)


def test_cyclic_index_two_period_two():
    c = (1, 2, 3, 2)  # c^4 = c^2
    tm = generate(StateSet.range(4), [c])
    assert len(tm) == 4
    c1 = tm.element_index(c)
    c2, c3 = tm.mul(c1, c1), tm.mul(tm.mul(c1, c1), c1)
    ld = local_divisor(tm, c1)
    assert sorted(ld.carrier) == sorted([c1, c2, c3])
    i2 = ld.carrier.index(c2)
    assert ld.carrier[ld.circ(i2, i2)] == c3
    carrier, table = oracles.local_divisor_table(tm.elements, c)
    assert table[tm.elements[c2], tm.elements[c2]] == {tm.elements[c3]}


def _check_local_divisor(tm, c):
    elems = tm.elements
    ce = elems[c]
    ld = local_divisor(tm, c)
    carrier, table = oracles.local_divisor_table(elems, ce)
    assert sorted(elems[e] for e in ld.carrier) == carrier
    k = len(ld.carrier)
    # well defined and matching the library's table
    for i in range(k):
        for j in range(k):
            res = table[elems[ld.carrier[i]], elems[ld.carrier[j]]]
            assert res == {elems[ld.carrier[ld.circ(i, j)]]}
    # c is neutral and the product is associative
    assert all(ld.circ(0, i) == i == ld.circ(i, 0) for i in range(k))
    for i, j, l in itertools.product(range(k), repeat=3):
        assert ld.circ(ld.circ(i, j), l) == ld.circ(i, ld.circ(j, l))
    # action xc o e = x . e is independent of the preimage x and faithful
    xc = sorted(set(ce))
    for e, act in zip(ld.carrier, ld.action):
        for p_pos, p in enumerate(xc):
            images = {elems[e][x] for x in range(tm.n_states) if ce[x] == p}
            assert len(images) == 1
            assert xc[act[p_pos]] == images.pop()
    assert len(set(ld.action)) == k
    if not is_permutation(ce):
        assert k < len(tm) and len(xc) < tm.n_states
    return ld


def test_local_divisor_exhaustive_small():
    for tm in monoids_up_to(3, 12):
        for c in range(len(tm)):
            assert circ_well_defined(tm, c)
            _check_local_divisor(tm, c)


def test_local_divisor_random_four_states():
    rng = random.Random(4)
    for _ in range(60):
        tm = random_monoid(rng, 4, 12)
        for c in range(len(tm)):
            assert circ_well_defined(tm, c)
            _check_local_divisor(tm, c)


def test_naive_variant_is_never_faithful():
    for tm in monoids_up_to(3, 12):
        for c in range(len(tm)):
            ce = tm.elements[c]
            pair = naive_unfaithful_witness(tm, c)
            if is_permutation(ce):
                assert pair is None
                continue
            hi, lo = pair
            assert hi != lo
            mc_or_one = {tm.mul(m, c) for m in range(len(tm))} | {0}
            assert hi in mc_or_one and lo in mc_or_one
            xc = set(ce)
            assert all(tm.elements[hi][x] == tm.elements[lo][x] for x in xc)


def test_local_action_certificate():
    ld = local_divisor(T3, 0)
    assert len(ld) == len(T3)
    cert = local_action_certificate(ld)
    assert list(cert.phi) == [0, 1, 2]
    assert verify_covering(cert).ok
    cert = local_action_certificate(local_divisor(T3, C_IDEM))
    assert cert.source.size == 3 and verify_covering(cert).ok
    rng = random.Random(9)
    for _ in range(40):
        tm = random_monoid(rng, 4, 10)
        for c in range(len(tm)):
            assert verify_covering(local_action_certificate(local_divisor(tm, c))).ok


def test_larger_carrier_variant():
    small = local_divisor(T3, C_IDEM)
    big = local_divisor(T3, C_IDEM, variant="cM&Mc")
    assert set(small.carrier) <= set(big.carrier)
    with pytest.raises(DomainError):
        local_divisor(T3, C_IDEM, variant="nope")

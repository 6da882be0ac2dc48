import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

import oracles
from krdecomp.constants import U2, absorption_holds, bar, group_with_constants_split, u_monoid, u_x_decompose
from krdecomp.division import verify_covering
from krdecomp.errors import DomainError
from krdecomp.tmonoid import MonoidAction, StateSet, constant, cyclic_group, generate, symmetric_group


def test_bar_examples():
    point = generate(StateSet.range(1), [])
    assert len(bar(point).tm) == 1
    s2 = symmetric_group(2)
    t2 = bar(s2).tm
    assert set(t2.elements) == oracles.closure([(1, 0), (0, 0), (1, 1)], 2)
    assert len(t2) == 4


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(0, n - 1)] * n), min_size=0, max_size=3)))
def test_bar_is_idempotent_and_absorbing(gens):
    n = len(gens[0]) if gens else 1
    tm = generate(StateSet.range(n), gens)
    b = bar(tm)
    assert set(tm.elements) <= set(b.tm.elements)
    assert all(constant(n, x) in b.tm.index for x in range(n))
    assert set(bar(b).tm.elements) == set(b.tm.elements)
    assert absorption_holds(b)


def test_bar_rejects_unfaithful_action():
    ma = MonoidAction(StateSet.range(1), [[0, 1], [1, 1]], [[0], [0]])
    with pytest.raises(DomainError):
        bar(ma)


def test_u_monoid_sizes():
    assert len(u_monoid(StateSet.range(2))) == 3
    assert len(u_monoid(StateSet.range(1))) == 1
    assert len(u_monoid(StateSet.range(4))) == 5
    assert set(U2.elements) == {(0, 1), (0, 0), (1, 1)}


def test_group_with_constants_trivial_group():
    triv = generate(StateSet.range(2), [])
    cert = group_with_constants_split(bar(triv))
    ux, greg = cert.source.factors
    assert len(ux) == 3 and len(greg) == 1
    assert cert.source.size == 2
    assert verify_covering(cert).ok


def test_group_with_constants_c2_regular():
    leaf = bar(cyclic_group(2))
    assert len(leaf.tm) == 4
    cert = group_with_constants_split(leaf)
    assert cert.source.size == 4
    assert verify_covering(cert).ok


def test_group_with_constants_s3():
    cert = group_with_constants_split(bar(symmetric_group(3)))
    assert cert.source.size == 18
    assert verify_covering(cert).ok


def test_group_with_constants_needs_group():
    with pytest.raises(DomainError):
        group_with_constants_split(bar(generate(StateSet.range(2), [(0, 0)])))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_u_x_decompose(k):
    seq, cert = u_x_decompose(StateSet.range(k))
    assert len(seq) == k - 1
    assert all(f.kind == "U2" and f.n_states == 2 for f in seq)
    assert cert.source.size == 2 ** (k - 1)
    assert len(cert.covers) == k
    assert verify_covering(cert).ok


def test_u_x_decompose_rejects_single_state():
    with pytest.raises(DomainError):
        u_x_decompose(StateSet.range(1))

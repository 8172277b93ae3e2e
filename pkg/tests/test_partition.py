import pytest
from hypothesis import given, settings, strategies as st

from tiedlinks.partition import SizeMismatch, TiePartition


def P(n, *blocks):
    return TiePartition.from_blocks(n, blocks)


def test_join_transitivity():
    assert P(2, [0, 1]).join(P(2, [1, 2])) == P(2, [0, 1, 2])


def test_join_identity():
    p = P(3, [1, 3])
    assert p.join(TiePartition.discrete(3)) == p


def test_join_eta_generators():
    got = P(3, [1, 2]).join(P(3, [2, 3]))
    assert got == P(3, [1, 2, 3])
    assert got.block_of(1) == [1, 2, 3]


def test_join_size_mismatch():
    with pytest.raises(SizeMismatch):
        P(2, [1, 2]).join(P(3, [1, 2]))


def test_apply_perm_transposition():
    s1 = (0, 2, 1)  # images, index 0 fixed
    assert P(2, [0, 1]).apply_perm(s1) == P(2, [0, 2])


def test_apply_perm_identity_and_involution():
    p = P(3, [0, 2], [1, 3])
    ident = (0, 1, 2, 3)
    assert p.apply_perm(ident) == p
    s1 = (0, 2, 1, 3)
    assert p.apply_perm(s1).apply_perm(s1) == p


def test_peel_cases():
    tied0, tiedm, rest = P(2, [0, 2]).peel()
    assert (tied0, tiedm) == (True, False)
    assert rest == TiePartition.discrete(1)

    tied0, tiedm, rest = TiePartition.discrete(3).peel()
    assert (tied0, tiedm) == (False, False)
    assert rest == TiePartition.discrete(2)

    tied0, tiedm, rest = P(2, [1, 2]).peel()
    assert (tied0, tiedm) == (False, True)
    assert rest == TiePartition.discrete(1)


def test_merge_top_into():
    p = P(3, [1, 3])
    assert p.merge_top_into(2) == P(2, [1, 2])
    assert P(3, [0, 3]).merge_top_into(2) == P(2, [0, 2])


def test_induced_component_partition():
    # two unknot components joined by a tie between their strands
    p = P(2, [1, 2])
    assert p.induced_component_partition([(1,), (2,)]) == P(2, [1, 2])
    # the same tie internal to a single 2-strand cycle is invisible
    assert p.induced_component_partition([(1, 2)]) == TiePartition.discrete(1)
    assert TiePartition.discrete(2).induced_component_partition([(1,), (2,)]) == TiePartition.discrete(2)


def test_str():
    assert str(P(4, [0, 1], [2, 3])) == "{0,1}{2,3}{4}"


# -- properties ----------------------------------------------------------------

@st.composite
def partitions(draw, n=None):
    if n is None:
        n = draw(st.integers(min_value=0, max_value=8))
    k = draw(st.integers(min_value=0, max_value=n))
    pairs = [
        (draw(st.integers(min_value=0, max_value=n)), draw(st.integers(min_value=0, max_value=n)))
        for _ in range(k)
    ]
    return TiePartition.from_pairs(n, pairs)


@st.composite
def perms(draw, n):
    images = list(range(1, n + 1))
    images = draw(st.permutations(images))
    return (0, *images)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_join_is_semilattice(data):
    n = data.draw(st.integers(min_value=0, max_value=8))
    p = data.draw(partitions(n))
    q = data.draw(partitions(n))
    r = data.draw(partitions(n))
    assert p.join(q) == q.join(p)
    assert p.join(p) == p
    assert p.join(q).join(r) == p.join(q.join(r))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_apply_perm_is_group_action(data):
    n = data.draw(st.integers(min_value=1, max_value=8))
    p = data.draw(partitions(n))
    s = data.draw(perms(n))
    t = data.draw(perms(n))
    composed = tuple(t[s[i]] for i in range(n + 1))  # s then t
    assert p.apply_perm(s).apply_perm(t) == p.apply_perm(composed)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_internal_ties_do_not_change_components(data):
    n = data.draw(st.integers(min_value=2, max_value=7))
    p = data.draw(partitions(n))
    # random cycle structure
    strands = list(range(1, n + 1))
    strands = data.draw(st.permutations(strands))
    cut = sorted(data.draw(st.sets(st.integers(min_value=1, max_value=n - 1), max_size=3)))
    cycles, prev = [], 0
    for c in cut + [n]:
        if c > prev:
            cycles.append(tuple(strands[prev:c]))
            prev = c
    base = p.induced_component_partition(cycles)
    cyc = cycles[data.draw(st.integers(min_value=0, max_value=len(cycles) - 1))]
    if len(cyc) >= 2:
        internal = TiePartition.from_pairs(n, [(cyc[0], cyc[1])])
        assert p.join(internal).induced_component_partition(cycles) == base

import pytest

from khom.abgroups import (
    CoprimeSplit, Decomp, FinAbGroup, check_size_bound, closure,
    cyclic_subgroups, full_subgroup, intermediates, intersect, join,
    multiple_subgroup, subgroup_from_elements, subgroups, subgroups_of,
    sylow_decompose, trivial_subgroup, v4_subquotients,
)
from khom.errors import ParseError, SizeBoundError


def test_parse_and_name():
    assert FinAbGroup.from_string("e").orders == ()
    assert FinAbGroup.from_string("C2xC4xC3").orders == (2, 4, 3)
    assert FinAbGroup.from_string("C2xC4xC3").name() == "C2xC4xC3"
    assert FinAbGroup.from_string("e").name() == "e"
    for bad in ["C1", "C0", "Cx", "D4", "C2x", "", "C2 x C3x"]:
        with pytest.raises(ParseError):
            FinAbGroup.from_string(bad)


def test_size_bound(monkeypatch):
    monkeypatch.setenv("KHOM_SIZE_BOUND", "8")
    check_size_bound(8)
    with pytest.raises(SizeBoundError):
        check_size_bound(9)
    monkeypatch.delenv("KHOM_SIZE_BOUND")
    check_size_bound(512)
    with pytest.raises(SizeBoundError):
        check_size_bound(513)


def test_arithmetic():
    G = FinAbGroup((2, 4))
    assert G.order == 8
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert G.neg((1, 1)) == (1, 3)
    assert G.element_order((0, 1)) == 4
    assert G.element_order((1, 2)) == 2
    assert len(G.elements()) == 8


SUBGROUP_COUNTS = {
    (): 1,
    (2,): 2,
    (4,): 3,
    (2, 2): 5,
    (8,): 4,
    (2, 4): 8,
    (2, 2, 2): 16,
    (16,): 5,
    (2, 8): 11,
    (4, 4): 15,
    (2, 2, 4): 27,
    (2, 2, 2, 2): 67,
    (3, 3): 6,
    (9, 3): 10,
    (6, 6): 30,
}


def test_subgroup_counts():
    for orders, count in SUBGROUP_COUNTS.items():
        assert len(subgroups(FinAbGroup(orders))) == count, orders


def test_cyclic_subgroup_count():
    # cyclic subgroups of C2xC4: e, three of order 2? no: (1,0),(0,2),(1,2)
    # give three order-2 subgroups, two of order 4: <(0,1)>, <(1,1)>
    G = FinAbGroup((2, 4))
    cyc = cyclic_subgroups(G)
    assert sorted(S.order for S in cyc) == [1, 2, 2, 2, 4, 4]
    # every subgroup of a cyclic group is cyclic
    C12 = FinAbGroup((12,))
    assert len(cyclic_subgroups(C12)) == len(subgroups(C12)) == 6


def test_subgroup_order_is_deterministic():
    G = FinAbGroup((2, 4))
    subs1 = [S.key for S in subgroups(G)]
    subs2 = [S.key for S in subgroups(FinAbGroup((2, 4)))]
    assert subs1 == subs2
    assert subs1 == sorted(subs1)


def test_lattice_ops():
    G = FinAbGroup((2, 2))
    A = subgroup_from_elements(G, closure(G, [(1, 0)]))
    B = subgroup_from_elements(G, closure(G, [(0, 1)]))
    assert join(A, B) == full_subgroup(G)
    assert intersect(A, B) == trivial_subgroup(G)
    assert A.index_in(full_subgroup(G)) == 2
    assert trivial_subgroup(G).le(A)


def test_subgroups_of():
    G = FinAbGroup((2, 4))
    K = subgroup_from_elements(G, closure(G, [(0, 1)]))  # C4
    inner = subgroups_of(K)
    assert [S.order for S in inner] == [1, 2, 4]


def test_multiple_subgroup():
    G = FinAbGroup((2, 4))
    K = full_subgroup(G)
    two_k = multiple_subgroup(K, 2)
    assert sorted(two_k.elements) == [(0, 0), (0, 2)]


def test_v4_subquotients():
    V = FinAbGroup((2, 2))
    pairs = v4_subquotients(full_subgroup(V))
    assert len(pairs) == 1
    T, L = pairs[0]
    assert T.order == 4 and L.order == 1
    assert len(intermediates(T, L)) == 3
    # C4 has none, C2xC4 has: (V, e), (G, C2) for each C2 with G/C2 = V?
    C4 = FinAbGroup((4,))
    assert v4_subquotients(full_subgroup(C4)) == []
    G = FinAbGroup((2, 4))
    pairs = v4_subquotients(full_subgroup(G))
    # (V,e) where V = {(a, 2b)}, and (G, L) for L of order 2 with G/L = V;
    # G/<(0,2)> = C2xC2, G/<(1,0)> = C4, G/<(1,2)> = C4
    assert len(pairs) == 2


def test_decomp_roundtrip():
    G = FinAbGroup((2, 4, 3))
    K = full_subgroup(G)
    d = K.decomp
    assert d.orders == (2, 12)
    for x in G.elements():
        assert d.from_coord(d.coord(x)) == x


def test_decomp_quotient():
    G = FinAbGroup((2, 4))
    L = subgroup_from_elements(G, closure(G, [(0, 2)]))
    d = Decomp(full_subgroup(G), L)
    assert sorted(d.orders) == [2, 2]
    # coord factors through L
    assert d.coord((0, 2)) == (0, 0)
    assert d.coord((0, 1)) != (0, 0)
    # proper subgroup decomp
    K = subgroup_from_elements(G, closure(G, [(1, 2)]))
    dk = K.decomp
    assert dk.orders == (2,)
    assert dk.coord((1, 2)) == (1,)


def test_sylow_decompose():
    G = FinAbGroup((12, 2))
    sp = sylow_decompose(G, 2)
    assert sp.P.orders == (4, 2)
    assert sp.N.orders == (3,)
    for x in G.elements():
        assert sp.from_pair(*sp.to_pair(x)) == x
    # subgroup transport is a bijection onto pairs
    pairs = set()
    for S in subgroups(G):
        pairs.add((sp.subgroup_to_p(S).key, sp.subgroup_to_n(S).key))
        back = sp.subgroup_from_parts(sp.subgroup_to_p(S),
                                      sp.subgroup_to_n(S))
        assert back == S
    assert len(pairs) == len(subgroups(G))
    assert len(subgroups(G)) == len(subgroups(sp.P)) * len(subgroups(sp.N))


def test_coprime_split_general():
    G = FinAbGroup((6, 6))
    sp = CoprimeSplit(G, {2})
    assert sp.P.orders == (2, 2) and sp.N.orders == (3, 3)
    x = (5, 4)
    xp, xn = sp.to_pair(x)
    assert xp == (1, 0) and xn == (2, 1)
    assert sp.from_pair(xp, xn) == x

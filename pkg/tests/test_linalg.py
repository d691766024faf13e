import random

import pytest
from hypothesis import given, settings, strategies as st

from khom.errors import InternalConsistencyError
from khom.linalg import (
    IntMat, FgAbGroup, KernelPresentation, Presentation, coker_type,
    direct_sum_groups, group_from_orders, hnf_cols, hnf_rows, induced_map,
    invariant_factors_from_orders, kernel_cols, map_is_isomorphism,
    map_is_surjective, pval, snf, snf_verify, solve, solve_mixed,
)


small_mats = st.integers(0, 5).flatmap(
    lambda m: st.integers(0, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m, max_size=m).map(lambda rows: IntMat(m, n, rows))))


@given(small_mats)
@settings(max_examples=200, deadline=None)
def test_snf_identities(M):
    s = snf(M)
    assert snf_verify(M, s)
    # divisibility chain, nonnegative diagonal
    d = s.diag
    assert all(x >= 0 for x in d)
    for x, y in zip(d, d[1:]):
        if x == 0:
            assert y == 0
        elif y:
            assert y % x == 0


def test_snf_large_entries_exact():
    # entries big enough to overflow any fixed-width integer type
    random.seed(7)
    M = IntMat(6, 6, [[random.randrange(-10**25, 10**25) for _ in range(6)]
                      for _ in range(6)])
    s = snf(M)
    assert snf_verify(M, s)


def test_snf_40x40():
    random.seed(11)
    M = IntMat(40, 40, [[random.randrange(-4, 5) for _ in range(40)]
                        for _ in range(40)])
    s = snf(M)
    assert snf_verify(M, s)


def test_snf_deterministic():
    random.seed(3)
    M = IntMat(8, 9, [[random.randrange(-6, 7) for _ in range(9)]
                      for _ in range(8)])
    s1 = snf(M)
    s2 = snf(M.copy())
    assert s1.U == s2.U and s1.V == s2.V and s1.D == s2.D


def test_snf_pivot_rule():
    # the 2 at position (1,0) beats the 2 at (1,1); the 3 never pivots first
    M = IntMat(2, 2, [[3, 0], [2, 2]])
    s = snf(M)
    assert s.diag == [1, 6]


def test_hnf_canonical_under_column_ops():
    M = IntMat(3, 3, [[2, 0, 1], [0, 3, 1], [0, 0, 5]])
    N = IntMat(3, 3, [[2, 2, 3], [3, 0, 4], [5, 0, 5]])
    # same lattice: N columns = integer combinations of M columns and back
    M2 = IntMat(3, 3, [[2, 1, 3], [3, 4, 7], [5, 5, 10]])
    h1 = hnf_cols(M2)
    h2 = hnf_cols(IntMat.from_cols([M2.col(2), M2.col(0),
                                    [a + b for a, b in zip(M2.col(1), M2.col(0))]], 3))
    assert h1 == h2
    assert hnf_rows(M).m == 3


@given(small_mats)
@settings(max_examples=150, deadline=None)
def test_kernel_cols(M):
    K = kernel_cols(M)
    assert K.m == M.n
    if K.n:
        assert M.mul(K).is_zero()
    s = snf(M)
    assert K.n == M.n - s.rank


def test_kernel_saturated():
    M = IntMat(1, 2, [[2, -2]])
    K = kernel_cols(M)
    assert K.n == 1
    assert [abs(x) for x in K.col(0)] == [1, 1]


@given(small_mats, st.lists(st.integers(-5, 5), min_size=5, max_size=5))
@settings(max_examples=150, deadline=None)
def test_solve_roundtrip(M, coeffs):
    x = coeffs[:M.n]
    b = M.times_vec(x)
    sol = solve(M, b)
    assert sol is not None
    assert M.times_vec(sol) == b


def test_solve_no_solution():
    M = IntMat(2, 1, [[2], [0]])
    assert solve(M, [1, 0]) is None
    assert solve(M, [2, 1]) is None
    assert solve(M, [4, 0]) == [2]


def test_solve_mixed():
    M = IntMat(1, 1, [[3]])
    # 3x = 1 mod 4 has solution x = 3
    sol = solve_mixed(M, [1], [4])
    assert sol is not None and (3 * sol[0] - 1) % 4 == 0


def test_pval():
    assert pval(40, 2) == 3
    assert pval(40, 5) == 1
    assert pval(7, 3) == 0
    with pytest.raises(InternalConsistencyError):
        pval(0, 2)


def test_invariant_factors():
    assert invariant_factors_from_orders([8, 3]) == (24,)
    assert invariant_factors_from_orders([2, 4, 3]) == (2, 12)
    assert invariant_factors_from_orders([1, 1]) == ()
    assert invariant_factors_from_orders([2, 2, 2]) == (2, 2, 2)
    assert invariant_factors_from_orders([6, 4, 9]) == (6, 36)


def test_group_basics():
    G = FgAbGroup(2, (2, 4), ring="Z")
    assert G.gen_orders() == [0, 0, 2, 4]
    assert G.order() == 0
    assert G.reduce([1, -1, 5, -1]) == (1, -1, 1, 3)
    H = group_from_orders([4, 2], free_rank=2)
    assert G.same_type(H)
    with pytest.raises(InternalConsistencyError):
        FgAbGroup(0, (4, 2))


def test_group_p_part():
    G = group_from_orders([24, 2], free_rank=1)
    P2 = G.p_part(2)
    assert P2.ring == "Zp:2" and P2.free_rank == 1
    assert P2.torsion == (2, 8)
    P3 = G.p_part(3)
    assert P3.torsion == (3,)
    P5 = G.p_part(5)
    assert P5.torsion == ()


def test_direct_sum_crt():
    A = group_from_orders([8])
    B = group_from_orders([3])
    S = direct_sum_groups([A, B])
    assert S.torsion == (24,)


def test_presentation_cyclic():
    # Z^2 / <(2, 4)> = Z + Z/2
    pres = Presentation([0, 0], IntMat.from_cols([[2, 4]], 2))
    assert pres.group.free_rank == 1 and pres.group.torsion == (2,)
    # projection kills the relation
    assert all(x == 0 for x in pres.project([2, 4]))
    # sections really do map back to unit vectors
    for j in range(pres.group.n_gens):
        e = [0] * pres.group.n_gens
        e[j] = 1
        assert list(pres.project(pres.section(j))) == e


def test_presentation_with_orders():
    # (Z/4 + Z/4) / <(1, 1)> = Z/4
    pres = Presentation([4, 4], IntMat.from_cols([[1, 1]], 2))
    assert pres.group.free_rank == 0 and pres.group.torsion == (4,)
    assert all(x == 0 for x in pres.project([1, 1]))
    assert all(x == 0 for x in pres.project([4, 0]))


def test_presentation_labels():
    pres = Presentation([0, 2], IntMat(2, 0), input_labels=["a", "b"])
    assert set(pres.group.labels) == {"a", "b"}


def test_induced_map():
    # multiplication by 2: Z/4 -> Z/8 induced from input coordinates
    src = Presentation([4], IntMat(1, 0))
    dst = Presentation([8], IntMat(1, 0))
    F = IntMat(1, 1, [[2]])
    phi = induced_map(src, dst, F)
    assert phi.a == [[2]]
    # a map that does not kill relations raises
    bad_dst = Presentation([3], IntMat(1, 0))
    with pytest.raises(InternalConsistencyError):
        induced_map(src, bad_dst, IntMat(1, 1, [[1]]))


def test_iso_checks():
    A = group_from_orders([4], free_rank=1)
    B = group_from_orders([4], free_rank=1)
    good = IntMat(2, 2, [[1, 0], [0, 1]])
    assert map_is_isomorphism(good, A, B)
    bad = IntMat(2, 2, [[1, 0], [0, 2]])
    assert not map_is_isomorphism(bad, A, B)
    # multiplication by 3 on Z/4 is an iso
    C = group_from_orders([4])
    assert map_is_isomorphism(IntMat(1, 1, [[3]]), C, C)


def test_iso_ring_aware():
    # over Z2, hitting the odd part is not required
    A = FgAbGroup(1, (), ring="Zp:2")
    B = FgAbGroup(1, (), ring="Zp:2")
    times3 = IntMat(1, 1, [[3]])
    assert map_is_isomorphism(times3, A, B)
    AZ = FgAbGroup(1, (), ring="Z")
    BZ = FgAbGroup(1, (), ring="Z")
    assert not map_is_isomorphism(times3, AZ, BZ)


def test_coker_type():
    M = IntMat.from_cols([[2, 0], [0, 3]], 2)
    G = coker_type(M, [0, 0])
    assert G.free_rank == 0 and G.torsion == (6,)
    assert map_is_surjective(IntMat.identity(1), G)


def test_kernel_presentation():
    # injective map on Z has trivial kernel
    kp = KernelPresentation(IntMat(1, 1, [[2]]), [0], [0])
    assert kp.group.is_trivial()
    # zero map on (Z/2)^2: kernel is everything
    kp = KernelPresentation(IntMat(2, 2), [2, 2], [2, 2], ["a", "b"])
    assert kp.group.describe() == "Z/2 + Z/2"
    assert kp.group.labels == ("a", "b")
    assert kp.express([1, 1]) == (1, 1)
    # Z -> Z/4 sending 1 to 2: kernel 2Z
    kp = KernelPresentation(IntMat(1, 1, [[2]]), [0], [4], ["t"])
    assert kp.group.free_rank == 1 and kp.group.torsion == ()
    assert kp.rep(0) == [2]
    # addition Z/4 + Z/4 -> Z/4: kernel is the antidiagonal Z/4
    kp = KernelPresentation(IntMat(1, 2, [[1, 1]]), [4, 4], [4])
    assert kp.group.torsion == (4,)
    r = kp.rep(0)
    assert (r[0] + r[1]) % 4 == 0 and r[0] % 4 in (1, 3)
    assert kp.express([2, 2]) in ((2,),)
    with pytest.raises(InternalConsistencyError):
        kp.express([1, 0])


@given(small_mats)
@settings(max_examples=60, deadline=None)
def test_kernel_presentation_free_case(M):
    # for free source and target this is the classic integer kernel
    kp = KernelPresentation(M, [0] * M.n, [0] * M.m)
    assert kp.group.free_rank == M.n - snf(M).rank
    assert kp.group.torsion == ()
    for j in range(kp.group.free_rank):
        assert M.times_vec(kp.rep(j)) == [0] * M.m


def test_json_shape():
    G = FgAbGroup(1, (2,), labels=["u", "eta"], ring="Zp:2")
    assert G.to_json() == {"ring": "Zp:2", "free_rank": 1,
                           "torsion": [2], "labels": ["u", "eta"]}

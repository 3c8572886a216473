from fractions import Fraction

import pytest

from metalg.fields import GF, QQ
from metalg.linalg import Subspace, is_zero_vec, unit_vec
from metalg.metagroup import cyclic_group, doubling_chain, octonion_units
from metalg.algebra import (
    ActionLawViolation,
    BadEmbedding,
    Bimodule,
    NotAnIdeal,
    PsiEmbedding,
    build_bimodule,
    build_metagroup_algebra,
    check_bimodule_laws,
    default_embedding,
    enveloping_algebra,
    has_nontrivial_twist,
    ideal_bimodule_over_quotient,
    opposite_algebra,
    quotient_algebra,
    regular_bimodule,
    structure_algebra,
    sub_bimodule,
    subspace_product,
    left_power_chain,
    right_power_chain,
)
from metalg.catalog import algebra, nilpotent_extension


def test_group_algebra_z2_over_q():
    a = algebra("q-z2")
    assert a.dim == 2
    g = a.basis_vec(1)
    assert a.mul(g, g) == a.unit
    x = (Fraction(1), Fraction(1))
    assert a.mul(x, x) == (Fraction(2), Fraction(2))  # (1+a)^2 = 2 + 2a


def test_group_algebra_gf2():
    a = algebra("gf2-z2")
    f = GF(2)
    assert a.dim == 2 and a.field == f
    x = (f.one, f.one)
    assert is_zero_vec(a.mul(x, x))  # (1+a)^2 = 0 in characteristic 2


def test_octonion_algebra_products():
    o = algebra("q-octonions")
    assert o.dim == 8
    e1, e2, e3 = o.basis_vec(1), o.basis_vec(2), o.basis_vec(3)
    minus = lambda v: tuple(-x for x in v)
    assert o.mul(e1, e1) == minus(o.unit)
    assert o.mul(e1, e2) == e3
    assert o.mul(e2, e1) == minus(e3)
    # every basis product is a single signed basis element
    for i in range(8):
        for j in range(8):
            terms = o.structure[i][j]
            assert len(terms) == 1
            k, c = terms[0]
            assert c in (QQ.one, -QQ.one)
    assert has_nontrivial_twist(o)


def test_quaternion_subalgebra_hand_table():
    # basis images 1, e1, e2, e3 close under multiplication as quaternions
    o = algebra("q-octonions")
    e = [o.basis_vec(i) for i in range(4)]
    minus = lambda v: tuple(-x for x in v)
    assert o.mul(e[1], e[2]) == e[3]
    assert o.mul(e[2], e[3]) == e[1]
    assert o.mul(e[3], e[1]) == e[2]
    assert o.mul(e[2], e[1]) == minus(e[3])


def test_twisted_associativity_invariant():
    o = algebra("q-octonions")
    o.check_twisted_associativity()
    for i in range(8):
        for j in range(8):
            for k in range(8):
                lhs = o.mul(o.mul(o.basis_vec(i), o.basis_vec(j)), o.basis_vec(k))
                rhs = o.mul(o.basis_vec(i), o.mul(o.basis_vec(j), o.basis_vec(k)))
                t = o.twist(i, j, k)
                assert lhs == tuple(t * x for x in rhs)


def test_bad_embeddings_rejected():
    m = doubling_chain(1)  # psi = {0, 1}
    with pytest.raises(BadEmbedding):
        build_metagroup_algebra(m, QQ, PsiEmbedding.of({0: QQ.one, 1: QQ.el(2)}))
    with pytest.raises(BadEmbedding):
        build_metagroup_algebra(m, QQ, PsiEmbedding.of({0: QQ.one, 1: QQ.zero}))
    with pytest.raises(BadEmbedding):
        build_metagroup_algebra(m, QQ, PsiEmbedding.of({0: QQ.one, 1: QQ.one}))
    with pytest.raises(BadEmbedding):
        # GF(2) identifies 1 and -1, so the two-element psi cannot embed
        build_metagroup_algebra(m, GF(2), default_embedding(m, GF(2)))


def test_unit_must_be_two_sided():
    f = QQ
    bad = [[((0, f.one),), ((1, f.one),)], [((1, f.one),), ((1, f.one),)]]
    with pytest.raises(ActionLawViolation):
        structure_algebra(f, bad, (f.one, f.one))


def test_opposite_algebra():
    a = algebra("q-z2")
    aop = opposite_algebra(a)
    assert aop.structure == a.structure  # commutative: same stored structure
    o = algebra("q-octonions")
    oop = opposite_algebra(o)
    assert oop.structure[2][1] == o.structure[1][2]
    assert opposite_algebra(oop).structure == o.structure


def test_enveloping_dimensions_and_products():
    a = algebra("q-z2")
    env = enveloping_algebra(a)
    assert env.dim == 4
    # (1 (x) a')(a (x) 1') = a (x) a'
    t = env.tindex
    e = env.algebra
    lhs = e.mul(unit_vec(QQ, 4, t(0, 1)), unit_vec(QQ, 4, t(1, 0)))
    assert lhs == unit_vec(QQ, 4, t(1, 1))


def test_enveloping_octonion_product_signs():
    # tensor products multiply with the sign product of the two factors
    o = algebra("q-octonions")
    env = enveloping_algebra(o)
    t = env.tindex
    for (a, b, c, d) in ((1, 2, 4, 3), (3, 5, 6, 2), (7, 1, 2, 4)):
        terms = env.algebra.structure[t(a, b)][t(c, d)]
        assert len(terms) == 1
        (k, coeff), = terms
        (k1, c1), = o.structure[a][c]
        (k2, c2), = o.structure[d][b]
        assert k == t(k1, k2) and coeff == c1 * c2


def test_mu_and_kappa():
    a = algebra("q-z2")
    env = enveloping_algebra(a)
    t = env.tindex
    assert env.mu(unit_vec(QQ, 4, t(0, 0))) == a.unit
    assert env.mu(unit_vec(QQ, 4, t(1, 0))) == a.basis_vec(1)
    assert is_zero_vec(env.kappa(a.unit))
    ka = env.kappa(a.basis_vec(1))
    expect = [QQ.zero] * 4
    expect[t(1, 0)] = QQ.one
    expect[t(0, 1)] = -QQ.one
    assert ka == tuple(expect)
    for i in range(a.dim):
        assert is_zero_vec(env.mu(env.kappa(a.basis_vec(i))))


def test_mu_agrees_with_right_module_action():
    o = algebra("q-octonions")
    env = enveloping_algebra(o)
    for tt in range(0, env.dim, 7):
        assert env.mu(unit_vec(QQ, env.dim, tt)) == env.act_algebra_right(o.unit, tt)


def test_regular_bimodule_laws():
    for name in ("q-z2", "gf2-z2", "q-octonions", "nilpotent-k2"):
        regular_bimodule(algebra(name))


def test_corrupted_action_table_rejected():
    a = algebra("q-z2")
    reg = regular_bimodule(a)
    left = [list(cols) for cols in reg.left]
    left[1] = [((0, QQ.one),), ((0, QQ.one),)]  # break the action of the generator
    with pytest.raises(ActionLawViolation):
        build_bimodule(a, tuple(tuple(c) for c in left), reg.right)


def test_kernel_of_mu_dimension():
    a = algebra("q-z2")
    env = enveloping_algebra(a)
    s, bim = env.kernel_of_mu()
    assert s.dim == 2  # 4 - 2
    assert bim.dim == 2 and bim.grades == (0, 1)


def test_octonion_kernel_of_mu_graded():
    o = algebra("q-octonions")
    env = enveloping_algebra(o)
    s, bim = env.kernel_of_mu()
    assert s.dim == 56
    assert bim.grades is not None
    check_bimodule_laws(bim)


def test_quotient_algebra():
    a = algebra("gf2-z2")
    f = GF(2)
    ideal = Subspace.from_vectors(f, 2, [(f.one, f.one)])
    qd = quotient_algebra(a, ideal)
    assert qd.algebra.dim == 1
    assert qd.project(a.unit) == (f.one,)
    zero_ideal = Subspace.zero(QQ, 2)
    qd0 = quotient_algebra(algebra("q-z2"), zero_ideal)
    assert qd0.algebra.dim == 2
    with pytest.raises(ValueError):
        quotient_algebra(a, Subspace.full(f, 2))


def test_quotient_rejects_non_ideal():
    a = algebra("q-z2")
    not_ideal = Subspace.from_vectors(QQ, 2, [a.unit])
    with pytest.raises(NotAnIdeal):
        quotient_algebra(a, not_ideal)


def test_subspace_product_and_chains():
    a = algebra("gf2-z2")
    f = GF(2)
    s = Subspace.from_vectors(f, 2, [(f.one, f.one)])
    zero = Subspace.zero(f, 2)
    assert subspace_product(a, s, zero).dim == 0
    assert subspace_product(a, s, s).dim == 0  # (1+a)^2 = 0
    lchain = left_power_chain(a, s)
    rchain = right_power_chain(a, s)
    assert [x.dim for x in lchain] == [1, 0]
    assert [x.dim for x in lchain] == [x.dim for x in rchain]
    a3, _, n3 = nilpotent_extension(3)
    lc = left_power_chain(a3, n3)
    rc = right_power_chain(a3, n3)
    assert [x.dim for x in lc] == [4, 2, 0]
    assert all(x == y for x, y in zip(lc, rc))


def test_sub_bimodule_requires_invariance():
    a = algebra("q-z2")
    reg = regular_bimodule(a)
    bad = Subspace.from_vectors(QQ, 2, [a.unit])  # not invariant under a
    with pytest.raises(ActionLawViolation):
        sub_bimodule(reg, bad)


def test_ideal_bimodule_needs_square_zero():
    a3, _, n3 = nilpotent_extension(3)
    from metalg.decomposition import radical

    qd = quotient_algebra(a3, radical(a3).subspace)
    with pytest.raises(ActionLawViolation):
        ideal_bimodule_over_quotient(qd)


def test_enveloping_mu_equivariance_exact():
    # the certified invariant, re-checked here directly on the octonions
    o = algebra("q-octonions")
    env = enveloping_algebra(o)
    bim = env.as_bimodule()
    for i in range(o.dim):
        bi = o.basis_vec(i)
        for tt in range(0, env.dim, 5):
            et = unit_vec(QQ, env.dim, tt)
            assert env.mu(bim.act_left_basis(i, et)) == o.mul(bi, env.mu(et))
            assert env.mu(bim.act_right_basis(i, et)) == o.mul(env.mu(et), bi)

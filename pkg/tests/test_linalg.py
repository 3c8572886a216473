import random
from fractions import Fraction

import pytest

from metalg.fields import GF, QQ
from metalg.linalg import (
    SparseSystem,
    Subspace,
    complement_and_projections,
    invert,
    is_zero_vec,
    kernel_basis,
    mat_mul,
    mat_vec,
    midentity,
    rref,
    solve,
    transpose,
    unit_vec,
)
from metalg.linalg import _rref_generic


def _rand_q_matrix(rnd, rows, cols, span=5):
    return [tuple(Fraction(rnd.randint(-span, span), rnd.randint(1, 3)) for _ in range(cols))
            for _ in range(rows)]


def test_bareiss_matches_generic_elimination():
    rnd = random.Random(1)
    for _ in range(30):
        m = _rand_q_matrix(rnd, rnd.randint(1, 7), rnd.randint(1, 7))
        rr, piv = rref(QQ, m)
        rg, pg = _rref_generic([list(r) for r in m], QQ)
        assert [list(r) for r in rr] == rg
        assert list(piv) == pg


def test_solve_identity():
    b = tuple(Fraction(k) for k in (3, -1, 2))
    x, ker = solve(QQ, midentity(QQ, 3), b)
    assert x == b and ker.dim == 0


def test_solve_gf2_underdetermined():
    f = GF(2)
    rows = (tuple([f.one, f.one]),)
    x, ker = solve(f, rows, (f.one,))
    assert mat_vec(rows, x) == (f.one,)
    assert ker.dim == 1


def test_solve_random_rational_system():
    # solution verified by re-multiplication; kernel dim = cols - rank
    rnd = random.Random(2)
    for _ in range(10):
        m = _rand_q_matrix(rnd, 6, 8)
        x_true = tuple(Fraction(rnd.randint(-3, 3)) for _ in range(8))
        b = mat_vec(m, x_true)
        x, ker = solve(QQ, m, b)
        assert mat_vec(m, x) == b
        assert ker.dim == 8 - len(rref(QQ, m)[1])
        for v in ker.basis:
            assert is_zero_vec(mat_vec(m, v))


def test_solve_inconsistent():
    rows = ((Fraction(1), Fraction(0)), (Fraction(1), Fraction(0)))
    assert solve(QQ, rows, (Fraction(1), Fraction(2))) is None


def test_kernel_identity_and_zero():
    assert kernel_basis(QQ, midentity(QQ, 4)).dim == 0
    zero = tuple(tuple(Fraction(0) for _ in range(3)) for _ in range(2))
    k = kernel_basis(QQ, zero)
    assert k.dim == 3 and k.basis == midentity(QQ, 3)


def test_kernel_annihilates_exactly():
    rnd = random.Random(3)
    for field in (QQ, GF(3)):
        for _ in range(10):
            if field is QQ:
                m = _rand_q_matrix(rnd, 4, 6)
            else:
                m = [tuple(field.el(rnd.randint(0, 2)) for _ in range(6)) for _ in range(4)]
            ker = kernel_basis(field, m)
            for v in ker.basis:
                assert is_zero_vec(mat_vec(m, v))
            assert ker.dim == 6 - len(rref(field, m)[1])


def test_subspace_canonical_equality():
    # two different generating sets of the same plane give identical bases
    f = QQ
    u = (Fraction(1), Fraction(2), Fraction(0))
    v = (Fraction(0), Fraction(1), Fraction(1))
    s1 = Subspace.from_vectors(f, 3, [u, v])
    w = tuple(a + b for a, b in zip(u, v))
    s2 = Subspace.from_vectors(f, 3, [w, tuple(2 * a for a in v), u])
    assert s1 == s2 and s1.basis == s2.basis
    assert hash(s1) == hash(s2)


def test_subspace_coords_and_containment():
    f = QQ
    s = Subspace.from_vectors(f, 3, [(f.one, f.one, f.zero), (f.zero, f.zero, f.one)])
    v = (Fraction(2), Fraction(2), Fraction(-5))
    cs = s.coords(v)
    acc = [f.zero] * 3
    for c, b in zip(cs, s.basis):
        acc = [x + c * y for x, y in zip(acc, b)]
    assert tuple(acc) == v
    assert not s.contains((f.one, f.zero, f.zero))


def test_complement_and_projections():
    # spec invariants: P^2 = P, im P = V, quotient projection o section = id
    rnd = random.Random(4)
    for _ in range(5):
        vecs = _rand_q_matrix(rnd, 3, 6)
        v = Subspace.from_vectors(QQ, 6, vecs)
        spl = complement_and_projections(v)
        p = spl.proj
        assert mat_mul(p, p) == p
        img = Subspace.from_vectors(QQ, 6, transpose(p))
        assert img == v
        assert v.dim + spl.complement.dim == 6
        q = mat_mul(spl.quot_proj, spl.quot_section)
        assert q == midentity(QQ, 6 - v.dim)


def test_complement_edge_cases():
    full = Subspace.full(QQ, 3)
    spl = complement_and_projections(full)
    assert spl.complement.dim == 0 and spl.proj == midentity(QQ, 3)
    zero = Subspace.zero(QQ, 3)
    spl = complement_and_projections(zero)
    assert spl.complement.dim == 3
    assert tuple(spl.quot_section[r][q] for r in range(3) for q in range(3)) == \
        tuple(midentity(QQ, 3)[r][q] for r in range(3) for q in range(3))


def test_intersection():
    f = QQ
    u = Subspace.from_vectors(f, 3, [unit_vec(f, 3, 0), unit_vec(f, 3, 1)])
    w = Subspace.from_vectors(f, 3, [(f.one, f.one, f.zero), unit_vec(f, 3, 2)])
    i = u.intersect(w)
    assert i.dim == 1 and i.basis == ((f.one, f.one, f.zero),)


def test_invert():
    rnd = random.Random(5)
    m = None
    while m is None:
        cand = _rand_q_matrix(rnd, 4, 4)
        if len(rref(QQ, cand)[1]) == 4:
            m = tuple(cand)
    assert mat_mul(m, invert(QQ, m)) == midentity(QQ, 4)
    with pytest.raises(ValueError):
        invert(QQ, tuple(tuple(Fraction(0) for _ in range(2)) for _ in range(2)))


def test_sparse_system_matches_dense_solve():
    rnd = random.Random(6)
    for field in (QQ, GF(5)):
        for _ in range(10):
            n = 6
            if field is QQ:
                rows = _rand_q_matrix(rnd, 8, n, span=3)
            else:
                rows = [tuple(field.el(rnd.randint(0, 4)) for _ in range(n)) for _ in range(8)]
            x_true = tuple(field.el(rnd.randint(-2, 2)) for _ in range(n))
            rhs = mat_vec(rows, x_true)
            ss = SparseSystem(field, n)
            for r, b in zip(rows, rhs):
                ss.add({c: x for c, x in enumerate(r) if x}, b)
            assert ss.consistent
            got = ss.particular()
            assert mat_vec(rows, got) == rhs
            dense = solve(field, rows, rhs)
            assert dense is not None
            assert ss.kernel() == dense[1]
            assert got == dense[0]  # canonical answers agree across solvers


def test_sparse_system_witness_recombines():
    rnd = random.Random(7)
    for field in (QQ, GF(3)):
        rows = []
        n = 5
        for _ in range(4):
            if field is QQ:
                rows.append(tuple(Fraction(rnd.randint(-3, 3)) for _ in range(n)))
            else:
                rows.append(tuple(field.el(rnd.randint(0, 2)) for _ in range(n)))
        # engineered inconsistency: sum of first two rows with a wrong rhs
        dep = tuple(a + b for a, b in zip(rows[0], rows[1]))
        tags = ["r0", "r1", "r2", "r3", "bad"]
        rhs = [field.el(1), field.el(2), field.el(0), field.el(1), field.el(99)]
        all_rows = rows + [dep]
        ss = SparseSystem(field, n, track=True)
        for t, r, b in zip(tags, all_rows, rhs):
            ss.add({c: x for c, x in enumerate(r) if x}, b, tag=t)
        assert not ss.consistent
        prov, value = ss.witness()
        assert value
        acc_rows = [field.zero] * n
        acc_rhs = field.zero
        lookup = dict(zip(tags, zip(all_rows, rhs)))
        for t, c in prov.items():
            row, b = lookup[t]
            acc_rows = [x + c * y for x, y in zip(acc_rows, row)]
            acc_rhs = acc_rhs + c * b
        assert is_zero_vec(acc_rows)
        assert acc_rhs == value


def test_sparse_system_duplicate_rows_skipped():
    ss = SparseSystem(QQ, 3)
    assert ss.add({0: Fraction(1), 1: Fraction(2)})
    assert not ss.add({0: Fraction(2), 1: Fraction(4)})  # scaled duplicate
    assert ss.rank == 1

"""Named constructions used throughout the test battery and demos.

The nilpotent extensions are built as an explicit semisimple part D (a
group algebra) times a nilpotent tail, then pushed through a fixed
unimodular change of basis that mixes the two blocks.  The construction
itself is the oracle: D and the radical are known subspaces, so radical
and splitting computations can be checked against ground truth while the
stored basis gives them nothing for free.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import GradedAlgebra, build_metagroup_algebra, structure_algebra
from .fields import GF, QQ
from .linalg import Subspace, invert, mat_mul, mat_vec, transpose
from .metagroup import (
    MetagroupTable,
    cyclic_group,
    doubling_chain,
    klein_four,
    octonion_units,
    sedenion_units,
)


@lru_cache(maxsize=None)
def metagroup(name: str) -> MetagroupTable:
    if name == "z2":
        return cyclic_group(2)
    if name == "z3":
        return cyclic_group(3)
    if name == "z4":
        return cyclic_group(4)
    if name == "klein":
        return klein_four()
    if name == "signed-pair":
        return doubling_chain(0)
    if name == "complex-units":
        return doubling_chain(1)
    if name == "quaternion-units":
        return doubling_chain(2)
    if name == "octonion-units":
        return octonion_units()
    if name == "sedenion-units":
        return sedenion_units()
    raise KeyError("unknown metagroup %r" % name)


@lru_cache(maxsize=None)
def algebra(name: str) -> GradedAlgebra:
    """The standing battery: group algebras, the octonion algebra, and the
    two scrambled nilpotent extensions."""
    if name == "q-z2":
        return build_metagroup_algebra(metagroup("z2"), QQ, name=name)
    if name == "q-z3":
        return build_metagroup_algebra(metagroup("z3"), QQ, name=name)
    if name == "q-z4":
        return build_metagroup_algebra(metagroup("z4"), QQ, name=name)
    if name == "q-klein":
        return build_metagroup_algebra(metagroup("klein"), QQ, name=name)
    if name == "gf2-z2":
        return build_metagroup_algebra(metagroup("z2"), GF(2), name=name)
    if name == "gf3-z3":
        return build_metagroup_algebra(metagroup("z3"), GF(3), name=name)
    if name == "q-octonions":
        return build_metagroup_algebra(metagroup("octonion-units"), QQ, name=name)
    if name == "nilpotent-k2":
        return nilpotent_extension(2)[0]
    if name == "nilpotent-k3":
        return nilpotent_extension(3)[0]
    raise KeyError("unknown algebra %r" % name)


BATTERY = ("q-z2", "q-z3", "q-klein", "gf2-z2", "gf3-z3", "q-octonions",
           "nilpotent-k2", "nilpotent-k3")


def _skew_structure(nt, f):
    """Structure constants of Q[Z/2][t; sigma] / (t^nt) on basis (d, i) with
    d in {e, a} and 0 <= i < nt: products follow t a = -a t (sigma the sign
    automorphism), truncated at t^nt.  Noncommutative, associative, radical
    (t) of nilpotency index nt."""
    dim = 2 * nt
    idx = lambda d, i: d * nt + i
    structure = [[() for _ in range(dim)] for _ in range(dim)]
    for d1 in range(2):
        for i1 in range(nt):
            for d2 in range(2):
                for i2 in range(nt):
                    if i1 + i2 >= nt:
                        continue
                    sign = -f.one if (i1 % 2 == 1 and d2 == 1) else f.one
                    structure[idx(d1, i1)][idx(d2, i2)] = (
                        (idx((d1 + d2) % 2, i1 + i2), sign),)
    return structure


def _scramble(structure, unit, s_rows, f):
    """Change of basis: new basis f_i = sum_j S[i][j] b_j (S unimodular)."""
    n = len(structure)
    s = tuple(tuple(f.el(x) for x in row) for row in s_rows)
    sinv = invert(f, transpose(s))  # columns of S^T are the new basis vectors
    scols = transpose(s)

    def to_new(v):
        return mat_vec(sinv, v)

    base = structure_algebra(f, structure, unit)
    new_structure = []
    for i in range(n):
        fi = tuple(scols[r][i] for r in range(n))
        row = []
        for j in range(n):
            fj = tuple(scols[r][j] for r in range(n))
            prod = to_new(base.mul(fi, fj))
            row.append(tuple((k, c) for k, c in enumerate(prod) if c))
        new_structure.append(tuple(row))
    new_unit = to_new(unit)
    return new_structure, new_unit, s


@lru_cache(maxsize=None)
def nilpotent_extension(k: int):
    """A rational algebra D (+) N with D = Q[Z/2] and N the ideal (t) of a
    skew truncated-polynomial part (t a = -a t, t^k = 0), the whole basis
    mixed by a fixed unimodular matrix.

    The skew relation makes the algebra noncommutative, so complements of
    the radical are moved by genuine conjugation.  Returns
    (algebra, d_subspace, n_subspace): the oracle decomposition in the
    stored coordinates.
    """
    f = QQ
    if k == 2:
        nt = 2
        s_rows = [
            [1, 1, 0, 1],
            [0, 1, 0, -1],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ]
    elif k == 3:
        nt = 3
        s_rows = [
            [1, -1, 0, 0, 0, 0],
            [0, 1, 0, 1, 0, 0],
            [0, 0, 1, 0, 1, 0],
            [0, 0, 0, 1, 0, -1],
            [0, 0, 0, 0, 1, 1],
            [0, 0, 0, 0, 0, 1],
        ]
    else:
        raise ValueError("nilpotency index %r not in {2, 3}" % k)
    structure = _skew_structure(nt, f)
    n = len(structure)
    unit = tuple(f.one if i == 0 else f.zero for i in range(n))
    new_structure, new_unit, s = _scramble(structure, unit, s_rows, f)
    alg = structure_algebra(f, new_structure, new_unit, name="nilpotent-k%d" % k)
    # oracle subspaces in the new coordinates: old basis vector b_m has new
    # coordinates (S^T)^{-1} e_m
    sinv = invert(f, transpose(s))
    idx = lambda d, t: d * nt + t
    d_vecs = [mat_vec(sinv, tuple(f.one if r == idx(d, 0) else f.zero for r in range(n)))
              for d in range(2)]
    n_vecs = [mat_vec(sinv, tuple(f.one if r == idx(d, t) else f.zero for r in range(n)))
              for d in range(2) for t in range(1, nt)]
    d_sub = Subspace.from_vectors(f, n, d_vecs)
    n_sub = Subspace.from_vectors(f, n, n_vecs)
    return alg, d_sub, n_sub


@lru_cache(maxsize=None)
def nonsplit_truncated_extension():
    """GF(2)[x]/(x^4) presented over GF(2)[x]/(x^2): the quotient map by
    (x^2) admits no multiplicative section, so the section defect is a
    2-cocycle that is not a coboundary.  Returns (big algebra, ideal)."""
    f = GF(2)
    one = f.one
    # basis 1, x, x^2, x^3
    structure = []
    for i in range(4):
        row = []
        for j in range(4):
            row.append(((i + j, one),) if i + j < 4 else ())
        structure.append(tuple(row))
    big = structure_algebra(f, structure, (one, f.zero, f.zero, f.zero),
                            labels=("1", "x", "x2", "x3"), name="gf2-x4")
    ideal = Subspace.from_vectors(f, 4, [
        (f.zero, f.zero, one, f.zero),
        (f.zero, f.zero, f.zero, one),
    ])
    return big, ideal

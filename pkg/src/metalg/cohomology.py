"""Cochain complexes with twisted coboundaries, module homomorphism
spaces over the enveloping algebra, separating idempotents and splitting
maps.

Degree-1 cochains are linear maps A -> M stored as (dim M) x (dim A)
matrices; degree-2 cochains are bilinear maps stored on basis pairs.  The
coboundaries are

    (d1 h)(x, y)    = x.h(y) - h(xy) + h(x).y
    (d2 F)(x, y, z) = t * x.F(y, z) - F(xy, z) + t * F(x, yz) - F(x, y).z

with t the embedded associator of the grades of the triple (identically 1
for ungraded algebras).  Over an algebra with a nontrivial associator the
square d2 o d1 vanishes exactly on the subcomplex of grade-compatible
cochains (h(x) lying in the module component of x's grade) - the twisted
terms cancel through the associator's pentagon identity only when the
value grades track the argument grades - so all cocycle/coboundary spaces
are computed there; for trivially twisted algebras the full ungraded
spaces are used and everything reduces to the classical associative
complex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    ActionLawViolation,
    Bimodule,
    EnvelopingAlgebra,
    GradedAlgebra,
    enveloping_algebra,
    has_nontrivial_twist,
    regular_bimodule,
)
from .linalg import (
    SparseSystem,
    Subspace,
    mat_vec,
    solve,
    unit_vec,
    vadd,
    vscale,
    vsub,
    vzero,
    is_zero_vec,
)


class NotInDomain(Exception):
    """Input fails the membership check of a cochain/hom-space operation."""


# ---------------------------------------------------------------------------
# shared per-algebra constructions (memoised on the algebra instance)


def get_enveloping(a: GradedAlgebra) -> EnvelopingAlgebra:
    cache = getattr(a, "_metalg_cache", None)
    if cache is None:
        cache = a._metalg_cache = {}
    if "env" not in cache:
        cache["env"] = enveloping_algebra(a)
    return cache["env"]


def get_regular_bimodule(a: GradedAlgebra) -> Bimodule:
    cache = getattr(a, "_metalg_cache", None)
    if cache is None:
        cache = a._metalg_cache = {}
    if "reg" not in cache:
        cache["reg"] = regular_bimodule(a)
    return cache["reg"]


def get_kernel_mu(a: GradedAlgebra):
    """(subspace of the tensor space, bimodule) for ker mu of A^e."""
    cache = getattr(a, "_metalg_cache", None)
    if cache is None:
        cache = a._metalg_cache = {}
    if "kermu" not in cache:
        cache["kermu"] = get_enveloping(a).kernel_of_mu()
    return cache["kermu"]


# ---------------------------------------------------------------------------
# cochain coordinate spaces


class CochainSpace:
    """Packed coordinates for degree-1 or degree-2 cochains A -> M.

    Slots enumerate the free coefficients: (j, m) meaning the m-th module
    coordinate of h(x_j), or ((i, j), m) for 2-cochains.  In the graded
    case only grade-compatible slots are present.
    """

    def __init__(self, algebra, module, degree, graded, slots):
        self.algebra = algebra
        self.module = module
        self.degree = degree
        self.graded = graded
        self.slots = slots
        self.index = {s: n for n, s in enumerate(slots)}

    @property
    def dim(self):
        return len(self.slots)


def _require_grades(a, m):
    if m.grades is None:
        raise NotInDomain(
            "cohomology over an algebra with a nontrivial associator needs a "
            "graded module; module %r has no grades" % (m.name,))


def cochain_space1(a: GradedAlgebra, m: Bimodule) -> CochainSpace:
    graded = has_nontrivial_twist(a)
    if graded:
        _require_grades(a, m)
        slots = tuple(
            (j, w)
            for j in range(a.dim)
            for w in range(m.dim)
            if m.grades[w] == a.grading[j]
        )
    else:
        slots = tuple((j, w) for j in range(a.dim) for w in range(m.dim))
    return CochainSpace(a, m, 1, graded, slots)


def _product_grade(a: GradedAlgebra, i, j):
    terms = a.structure[i][j]
    if len(terms) != 1:
        raise NotInDomain("graded cochains need a monomial algebra")
    return a.grading[terms[0][0]]


def cochain_space2(a: GradedAlgebra, m: Bimodule) -> CochainSpace:
    graded = has_nontrivial_twist(a)
    if graded:
        _require_grades(a, m)
        slots = tuple(
            ((i, j), w)
            for i in range(a.dim)
            for j in range(a.dim)
            for w in range(m.dim)
            if m.grades[w] == _product_grade(a, i, j)
        )
    else:
        slots = tuple(
            ((i, j), w)
            for i in range(a.dim)
            for j in range(a.dim)
            for w in range(m.dim)
        )
    return CochainSpace(a, m, 2, graded, slots)


def pack_cochain1(space: CochainSpace, h):
    """Matrix rows (dim M x dim A) -> packed coordinate vector."""
    f = space.algebra.field
    for w in range(space.module.dim):
        for j in range(space.algebra.dim):
            if h[w][j] and (j, w) not in space.index:
                raise NotInDomain("cochain has a component outside the graded slots")
    return tuple(h[w][j] for (j, w) in space.slots)


def unpack_cochain1(space: CochainSpace, vec):
    f = space.algebra.field
    rows = [[f.zero] * space.algebra.dim for _ in range(space.module.dim)]
    for (j, w), c in zip(space.slots, vec):
        rows[w][j] = c
    return tuple(tuple(r) for r in rows)


def pack_cochain2(space: CochainSpace, phi):
    for i in range(space.algebra.dim):
        for j in range(space.algebra.dim):
            for w, c in enumerate(phi[i][j]):
                if c and ((i, j), w) not in space.index:
                    raise NotInDomain("2-cochain has a component outside the graded slots")
    return tuple(phi[p[0]][p[1]][w] for (p, w) in space.slots)


def unpack_cochain2(space: CochainSpace, vec):
    f = space.algebra.field
    d = space.algebra.dim
    md = space.module.dim
    out = [[[f.zero] * md for _ in range(d)] for _ in range(d)]
    for ((i, j), w), c in zip(space.slots, vec):
        out[i][j][w] = c
    return tuple(tuple(tuple(v) for v in row) for row in out)


# ---------------------------------------------------------------------------
# coboundaries


def _col(h, j, mdim):
    return tuple(h[w][j] for w in range(mdim))


def delta1(a: GradedAlgebra, m: Bimodule, h):
    """First coboundary of a 1-cochain (matrix), on all basis pairs."""
    md = m.dim
    out = []
    for i in range(a.dim):
        row = []
        hi = _col(h, i, md)
        for j in range(a.dim):
            v = m.act_left_basis(i, _col(h, j, md))
            hprod = vzero(a.field, md)
            for k, c in a.structure[i][j]:
                hprod = vadd(hprod, vscale(c, _col(h, k, md)))
            v = vsub(v, hprod)
            v = vadd(v, m.act_right_basis(j, hi))
            row.append(v)
        out.append(tuple(row))
    return tuple(out)


def delta2(a: GradedAlgebra, m: Bimodule, phi):
    """Second (twisted) coboundary of a 2-cochain, on all basis triples."""
    out = []
    for i in range(a.dim):
        plane = []
        for j in range(a.dim):
            row = []
            for k in range(a.dim):
                t = a.twist(i, j, k)
                v = vscale(t, m.act_left_basis(i, phi[j][k]))
                for k1, c in a.structure[i][j]:
                    v = vsub(v, vscale(c, phi[k1][k]))
                for k2, c in a.structure[j][k]:
                    v = vadd(v, vscale(t * c, phi[i][k2]))
                v = vsub(v, m.act_right_basis(k, phi[i][j]))
                row.append(v)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def delta1_sparse(a: GradedAlgebra, m: Bimodule, h):
    """Sparse evaluation: h is {j: {w: coeff}}; result {(i, j): {w: coeff}}."""
    out = {}
    for i in range(a.dim):
        hi = h.get(i, {})
        for j in range(a.dim):
            acc = dict(m.left_sparse(i, h.get(j, {})))
            for k, c in a.structure[i][j]:
                for w, x in h.get(k, {}).items():
                    nv = acc.get(w)
                    nv = -c * x if nv is None else nv - c * x
                    if nv:
                        acc[w] = nv
                    else:
                        acc.pop(w, None)
            for w, x in m.right_sparse(j, hi).items():
                nv = acc.get(w)
                nv = x if nv is None else nv + x
                if nv:
                    acc[w] = nv
                else:
                    acc.pop(w, None)
            if acc:
                out[(i, j)] = acc
    return out


def delta2_sparse_nonzero(a: GradedAlgebra, m: Bimodule, phi):
    """First triple where the twisted second coboundary of phi is nonzero,
    or None.  phi is {(i, j): {w: coeff}}."""
    empty = {}
    for i in range(a.dim):
        for j in range(a.dim):
            pij = phi.get((i, j), empty)
            for k in range(a.dim):
                t = a.twist(i, j, k)
                acc = {w: t * x for w, x in m.left_sparse(i, phi.get((j, k), empty)).items()}
                for k1, c in a.structure[i][j]:
                    for w, x in phi.get((k1, k), empty).items():
                        nv = acc.get(w)
                        nv = -c * x if nv is None else nv - c * x
                        if nv:
                            acc[w] = nv
                        else:
                            acc.pop(w, None)
                for k2, c in a.structure[j][k]:
                    tc = t * c
                    for w, x in phi.get((i, k2), empty).items():
                        nv = acc.get(w)
                        nv = tc * x if nv is None else nv + tc * x
                        if nv:
                            acc[w] = nv
                        else:
                            acc.pop(w, None)
                for w, x in m.right_sparse(k, pij).items():
                    nv = acc.get(w)
                    nv = -x if nv is None else nv - x
                    if nv:
                        acc[w] = nv
                    else:
                        acc.pop(w, None)
                if acc:
                    return (i, j, k, acc)
    return None


def _delta1_rows(a: GradedAlgebra, m: Bimodule, space: CochainSpace):
    """Sparse rows of the first coboundary over packed 1-cochain slots.

    Yields ((i, j, w), rowdict) for every basis pair and module coordinate
    with any nonzero entry.
    """
    idx = space.index
    for i in range(a.dim):
        for j in range(a.dim):
            rows = {}

            def put(w, slot, c):
                s = idx.get(slot)
                if s is None:
                    if c:
                        raise NotInDomain(
                            "coboundary hits a slot outside the graded space")
                    return
                r = rows.setdefault(w, {})
                nv = r.get(s)
                nv = c if nv is None else nv + c
                if nv:
                    r[s] = nv
                else:
                    del r[s]

            # + x_i . h(x_j)
            for u in range(m.dim):
                if space.graded and m.grades[u] != a.grading[j]:
                    continue
                for w, s in m.left[i][u]:
                    put(w, (j, u), s)
            # - h(x_i x_j)
            for k, c in a.structure[i][j]:
                for u in range(m.dim):
                    if space.graded and m.grades[u] != a.grading[k]:
                        continue
                    put(u, (k, u), -c)
            # + h(x_i) . x_j
            for u in range(m.dim):
                if space.graded and m.grades[u] != a.grading[i]:
                    continue
                for w, s in m.right[j][u]:
                    put(w, (i, u), s)
            for w, r in rows.items():
                if r:
                    yield (i, j, w), r


def _delta2_rows(a: GradedAlgebra, m: Bimodule, space: CochainSpace):
    """Sparse rows of the twisted second coboundary over 2-cochain slots."""
    idx = space.index

    def allowed(pair, u):
        return (pair, u) in idx

    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                t = a.twist(i, j, k)
                rows = {}

                def put(w, slot, c):
                    s = idx.get(slot)
                    if s is None:
                        if c:
                            raise NotInDomain(
                                "coboundary hits a slot outside the graded space")
                        return
                    r = rows.setdefault(w, {})
                    nv = r.get(s)
                    nv = c if nv is None else nv + c
                    if nv:
                        r[s] = nv
                    else:
                        del r[s]

                for u in range(m.dim):
                    if allowed((j, k), u):
                        for w, s in m.left[i][u]:
                            put(w, ((j, k), u), t * s)
                for k1, c in a.structure[i][j]:
                    for u in range(m.dim):
                        if allowed((k1, k), u):
                            put(u, ((k1, k), u), -c)
                for k2, c in a.structure[j][k]:
                    for u in range(m.dim):
                        if allowed((i, k2), u):
                            put(u, ((i, k2), u), t * c)
                for u in range(m.dim):
                    if allowed((i, j), u):
                        for w, s in m.right[k][u]:
                            put(w, ((i, j), u), -s)
                for w, r in rows.items():
                    if r:
                        yield (i, j, k, w), r


# ---------------------------------------------------------------------------
# cocycles, coboundaries, cohomology


def derivations(a: GradedAlgebra, m: Bimodule):
    """Z^1: the exact solution space of h(xy) = x.h(y) + h(x).y.

    Returns (Subspace over packed 1-cochain coordinates, CochainSpace).
    """
    space = cochain_space1(a, m)
    ss = SparseSystem(a.field, space.dim)
    for _, row in _delta1_rows(a, m, space):
        ss.add(row)
    return ss.kernel(), space


def inner_cochain(a: GradedAlgebra, m: Bimodule, u):
    """The map x -> x.m_u - m_u.x as a 1-cochain matrix."""
    md = m.dim
    e = unit_vec(a.field, md, u)
    cols = [vsub(m.act_left_basis(j, e), m.act_right_basis(j, e)) for j in range(a.dim)]
    return tuple(tuple(cols[j][w] for j in range(a.dim)) for w in range(md))


def _inner_generator_indices(a, m, space):
    if space.graded:
        e_grade = a.grading[_unit_basis_index(a)]
        return [u for u in range(m.dim) if m.grades[u] == e_grade]
    return list(range(m.dim))


def _unit_basis_index(a):
    nz = [i for i, c in enumerate(a.unit) if c]
    if len(nz) == 1:
        return nz[0]
    raise NotInDomain("graded computations need the unit to be a basis element")


def inner_derivations(a: GradedAlgebra, m: Bimodule):
    """B^1: span of the maps x -> x.m - m.x, each verified to be a cocycle.

    In the graded case the generators range over the unit-grade component
    of the module (the other components shift grades and cannot be
    grade-compatible cochains).
    """
    space = cochain_space1(a, m)
    gens = []
    for u in _inner_generator_indices(a, m, space):
        h = inner_cochain(a, m, u)
        if not _cochain_is_cocycle(a, m, h):
            raise ActionLawViolation(
                "inner-derivation", u,
                "x -> x.m - m.x fails the derivation identity for module "
                "basis element %d" % u)
        gens.append(pack_cochain1(space, h))
    return Subspace.from_vectors(a.field, space.dim, gens), space


def _cochain_is_cocycle(a, m, h):
    d = delta1(a, m, h)
    return all(is_zero_vec(d[i][j]) for i in range(a.dim) for j in range(a.dim))


@dataclass(frozen=True)
class CohomologyResult:
    """Dimensions and certified representatives of H^n(A, M)."""

    degree: int
    graded: bool
    dim_z: int
    dim_b: int
    dim_h: int
    representatives: tuple   # packed cocycle vectors
    functionals: tuple       # dual vectors: kill coboundaries, pair to identity
    slots: tuple

    def __post_init__(self):
        assert self.dim_h == self.dim_z - self.dim_b >= 0


def _representatives_mod(field, z: Subspace, b: Subspace):
    ss = SparseSystem(field, z.ambient)
    for vec in b.basis:
        ss.add({c: x for c, x in enumerate(vec) if x})
    reps = []
    for vec in z.basis:
        if ss.add({c: x for c, x in enumerate(vec) if x}):
            reps.append(vec)
    return tuple(reps)


def _dual_functionals(field, b: Subspace, reps):
    """Vectors lam_i with lam_i . b = 0 for all coboundary generators and
    lam_i . rep_j = delta_ij; certifies independence mod B offline."""
    if not reps:
        return ()
    n = b.ambient
    rows = list(b.basis) + [tuple(r) for r in reps]
    funcs = []
    for i in range(len(reps)):
        rhs = [field.zero] * b.dim + [field.one if t == i else field.zero for t in range(len(reps))]
        sol = solve(field, rows, tuple(rhs))
        if sol is None:
            raise ActionLawViolation(
                "dual-functional", i,
                "no dual functional; representatives are not independent mod coboundaries")
        funcs.append(sol[0])
    return tuple(funcs)


def h1(a: GradedAlgebra, m: Bimodule) -> CohomologyResult:
    z, space = derivations(a, m)
    b, _ = inner_derivations(a, m)
    for vec in b.basis:
        if not z.contains(vec):
            raise ActionLawViolation("b1-in-z1", None, "B^1 escapes Z^1")
    reps = _representatives_mod(a.field, z, b)
    funcs = _dual_functionals(a.field, b, reps)
    return CohomologyResult(1, space.graded, z.dim, b.dim, z.dim - b.dim,
                            reps, funcs, space.slots)


def coboundary2_generators(a: GradedAlgebra, m: Bimodule, space2=None):
    """Packed images under the first coboundary of the elementary
    1-cochains; spans B^2."""
    space1 = cochain_space1(a, m)
    if space2 is None:
        space2 = cochain_space2(a, m)
    f = a.field
    gens = []
    for (j, w) in space1.slots:
        sparse = delta1_sparse(a, m, {j: {w: f.one}})
        vec = [f.zero] * space2.dim
        for pair, vals in sparse.items():
            for u, c in vals.items():
                slot = space2.index.get((pair, u))
                if slot is None:
                    raise NotInDomain("coboundary escapes the graded 2-cochain slots")
                vec[slot] = c
        gens.append(tuple(vec))
    return gens


def coboundaries2(a: GradedAlgebra, m: Bimodule):
    """B^2: the image of the first coboundary, over packed 2-cochain slots."""
    space2 = cochain_space2(a, m)
    gens = coboundary2_generators(a, m, space2)
    return Subspace.from_vectors(a.field, space2.dim, gens), space2


def cocycles2(a: GradedAlgebra, m: Bimodule):
    space2 = cochain_space2(a, m)
    ss = SparseSystem(a.field, space2.dim)
    for _, row in _delta2_rows(a, m, space2):
        ss.add(row)
    return ss.kernel(), space2


def h2(a: GradedAlgebra, m: Bimodule) -> CohomologyResult:
    z, space2 = cocycles2(a, m)
    b, _ = coboundaries2(a, m)
    for vec in b.basis:
        if not z.contains(vec):
            raise ActionLawViolation("b2-in-z2", None, "B^2 escapes Z^2")
    reps = _representatives_mod(a.field, z, b)
    funcs = _dual_functionals(a.field, b, reps)
    return CohomologyResult(2, space2.graded, z.dim, b.dim, z.dim - b.dim,
                            reps, funcs, space2.slots)


# ---------------------------------------------------------------------------
# Hom spaces over the enveloping structure


class HomSpace:
    """All linear maps P -> M commuting with both one-sided actions.

    Stored as a canonical subspace over packed (source, target-coordinate)
    slots; in the graded case only grade-preserving maps are allowed.
    """

    def __init__(self, algebra, source, target, subspace, slots):
        self.algebra = algebra
        self.source = source
        self.target = target
        self.subspace = subspace
        self.slots = slots
        self.index = {s: n for n, s in enumerate(slots)}

    @property
    def dim(self):
        return self.subspace.dim

    def matrix_of(self, vec):
        f = self.algebra.field
        rows = [[f.zero] * self.source.dim for _ in range(self.target.dim)]
        for (u, w), c in zip(self.slots, vec):
            rows[w][u] = c
        return tuple(tuple(r) for r in rows)

    def pack(self, matrix):
        for w in range(self.target.dim):
            for u in range(self.source.dim):
                if matrix[w][u] and (u, w) not in self.index:
                    raise NotInDomain("map has a component outside the graded slots")
        return tuple(matrix[w][u] for (u, w) in self.slots)

    def basis_matrices(self):
        return tuple(self.matrix_of(v) for v in self.subspace.basis)


def _hom_slots(a, p: Bimodule, m: Bimodule):
    graded = has_nontrivial_twist(a)
    if graded:
        if p.grades is None or m.grades is None:
            raise NotInDomain(
                "hom spaces over a twisted algebra need graded modules")
        return tuple(
            (u, w)
            for u in range(p.dim)
            for w in range(m.dim)
            if m.grades[w] == p.grades[u]
        ), True
    return tuple((u, w) for u in range(p.dim) for w in range(m.dim)), False


def _hom_rows(a, p, m, slots, index):
    """Equations f(x.u) = x.f(u) and f(u.x) = f(u).x on basis pairs."""
    for i in range(a.dim):
        for u in range(p.dim):
            rows = {}

            def put(w, slot, c):
                s = index.get(slot)
                if s is None:
                    if c:
                        raise NotInDomain("commuting condition escapes graded slots")
                    return
                r = rows.setdefault(w, {})
                nv = r.get(s)
                nv = c if nv is None else nv + c
                if nv:
                    r[s] = nv
                else:
                    del r[s]

            # f(x_i . e_u) - x_i . f(e_u) = 0
            for u2, s in p.left[i][u]:
                for w in range(m.dim):
                    if (u2, w) in index:
                        put(w, (u2, w), s)
            for w in range(m.dim):
                if (u, w) in index:
                    for w2, s in m.left[i][w]:
                        put(w2, (u, w), -s)
            for w, r in rows.items():
                if r:
                    yield ("left", i, u, w), r
            rows = {}
            # f(e_u . x_i) - f(e_u) . x_i = 0
            for u2, s in p.right[i][u]:
                for w in range(m.dim):
                    if (u2, w) in index:
                        put(w, (u2, w), s)
            for w in range(m.dim):
                if (u, w) in index:
                    for w2, s in m.right[i][w]:
                        put(w2, (u, w), -s)
            for w, r in rows.items():
                if r:
                    yield ("right", i, u, w), r


def hom_over_enveloping(a: GradedAlgebra, p: Bimodule, m: Bimodule) -> HomSpace:
    """Maps commuting with both actions, as an exact solution space."""
    slots, graded = _hom_slots(a, p, m)
    index = {s: n for n, s in enumerate(slots)}
    ss = SparseSystem(a.field, len(slots))
    for _, row in _hom_rows(a, p, m, slots, index):
        ss.add(row)
    return HomSpace(a, p, m, ss.kernel(), slots)


def verify_hom(a, p: Bimodule, m: Bimodule, matrix):
    """Exact check that a matrix commutes with both actions."""
    for i in range(a.dim):
        for u in range(p.dim):
            eu = unit_vec(a.field, p.dim, u)
            fu = mat_vec(matrix, eu)
            if mat_vec(matrix, p.act_left_basis(i, eu)) != m.act_left_basis(i, fu):
                return False
            if mat_vec(matrix, p.act_right_basis(i, eu)) != m.act_right_basis(i, fu):
                return False
    return True


# ---------------------------------------------------------------------------
# the cocycle <-> hom correspondence


def kappa_in_kernel_coords(a: GradedAlgebra):
    """kappa as a matrix into the canonical ker-mu coordinates."""
    env = get_enveloping(a)
    s, _ = get_kernel_mu(a)
    cols = []
    for j in range(a.dim):
        coords = s.coords(env.kappa(a.basis_vec(j)))
        if coords is None:
            raise ActionLawViolation("kappa", j, "kappa image escapes ker mu")
        cols.append(coords)
    return tuple(tuple(cols[j][u] for j in range(a.dim)) for u in range(s.dim))


def chi(a: GradedAlgebra, p_matrix, m: Bimodule):
    """p |-> p o kappa, from Hom(ker mu, M) into Z^1(A, M)."""
    _, kbim = get_kernel_mu(a)
    if not verify_hom(a, kbim, m, p_matrix):
        raise NotInDomain("matrix does not commute with the two-sided actions")
    kap = kappa_in_kernel_coords(a)
    h = tuple(
        tuple(
            sum((p_matrix[w][u] * kap[u][j] for u in range(len(kap)) if kap[u][j]),
                a.field.zero)
            for j in range(a.dim)
        )
        for w in range(m.dim)
    )
    if not _cochain_is_cocycle(a, m, h):
        raise ActionLawViolation("chi", None, "chi image is not a derivation")
    return h


def chi_inverse(a: GradedAlgebra, d_matrix, m: Bimodule):
    """The unique hom on ker mu with p o kappa = d; NotInDomain if d is not
    a cocycle or no commuting preimage exists."""
    if not _cochain_is_cocycle(a, m, d_matrix):
        raise NotInDomain("matrix is not a derivation")
    _, kbim = get_kernel_mu(a)
    slots, graded = _hom_slots(a, kbim, m)
    index = {s: n for n, s in enumerate(slots)}
    ss = SparseSystem(a.field, len(slots))
    for _, row in _hom_rows(a, kbim, m, slots, index):
        ss.add(row)
    kap = kappa_in_kernel_coords(a)
    for j in range(a.dim):
        for w in range(m.dim):
            row = {}
            for u in range(len(kap)):
                if kap[u][j] and (u, w) in index:
                    s = index[(u, w)]
                    row[s] = row.get(s, a.field.zero) + kap[u][j]
            row = {s: c for s, c in row.items() if c}
            ss.add(row, d_matrix[w][j])
    if not ss.consistent:
        raise NotInDomain("derivation has no commuting preimage on ker mu")
    vec = ss.particular()
    f = a.field
    rows = [[f.zero] * kbim.dim for _ in range(m.dim)]
    for (u, w), c in zip(slots, vec):
        rows[w][u] = c
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# separability


@dataclass(frozen=True)
class SeparabilityCertificate:
    """A verified separating idempotent b in the enveloping algebra.

    mu(b) = 1 and the five identity families hold on all basis pairs; the
    families field records (family name -> number of identities checked),
    every one exactly zero.  kernel_dim is the solution-space dimension of
    the defining linear system (certificates are canonical: free variables
    of the reduced system are zero).
    """

    b: tuple
    kernel_dim: int
    families: tuple

    separable = True


@dataclass(frozen=True)
class NotSeparable:
    """Certified negative outcome: a linear combination of the defining
    identities with zero left side and nonzero right side."""

    witness: tuple  # ((tag, coeff), ...)
    value: object   # the nonzero combined right-hand side

    separable = False


def idempotent_equations(a: GradedAlgebra, env: EnvelopingAlgebra):
    """The defining linear system of a separating idempotent, one tagged
    equation (tag, coefficient row over A^e coordinates, rhs) at a time."""
    f = a.field
    bim = env.as_bimodule()
    d = a.dim
    # mu(b) = 1
    for k in range(d):
        row = {t: env.mu_rows[k][t] for t in range(env.dim) if env.mu_rows[k][t]}
        yield ("mu", k), row, a.unit[k]
    # x b = b x
    for i in range(d):
        rows = {}
        for t in range(env.dim):
            for w, s in bim.left[i][t]:
                rows.setdefault(w, {})[t] = rows.get(w, {}).get(t, f.zero) + s
            for w, s in bim.right[i][t]:
                rows.setdefault(w, {})[t] = rows.get(w, {}).get(t, f.zero) - s
        for w, row in sorted(rows.items()):
            row = {t: c for t, c in row.items() if c}
            if row:
                yield ("comm", i, w), row, f.zero
    # b(xy) = (bx)y ; (xb)y = x(by) ; (xy)b = x(yb)
    for i in range(d):
        bi = a.basis_vec(i)
        for j in range(d):
            prod = a.mul(bi, a.basis_vec(j))
            rows_a = {}
            rows_m = {}
            rows_l = {}
            for t in range(env.dim):
                et = {t: f.one}
                # right action by the product vector
                racc = {}
                for k, c in enumerate(prod):
                    if c:
                        for w, s in bim.right[k][t]:
                            racc[w] = racc.get(w, f.zero) + c * s
                # (b x_i) x_j
                step = bim.right_sparse(i, et)
                step = bim.right_sparse(j, step)
                for w, s in racc.items():
                    if s:
                        rows_a.setdefault(w, {})[t] = rows_a.get(w, {}).get(t, f.zero) + s
                for w, s in step.items():
                    rows_a.setdefault(w, {})[t] = rows_a.get(w, {}).get(t, f.zero) - s
                # (x_i b) x_j - x_i (b x_j)
                step = bim.right_sparse(j, bim.left_sparse(i, et))
                for w, s in step.items():
                    rows_m.setdefault(w, {})[t] = rows_m.get(w, {}).get(t, f.zero) + s
                step = bim.left_sparse(i, bim.right_sparse(j, et))
                for w, s in step.items():
                    rows_m.setdefault(w, {})[t] = rows_m.get(w, {}).get(t, f.zero) - s
                # (xy) b - x_i (x_j b)
                lacc = {}
                for k, c in enumerate(prod):
                    if c:
                        for w, s in bim.left[k][t]:
                            lacc[w] = lacc.get(w, f.zero) + c * s
                for w, s in lacc.items():
                    rows_l.setdefault(w, {})[t] = rows_l.get(w, {}).get(t, f.zero) + s
                step = bim.left_sparse(i, bim.left_sparse(j, et))
                for w, s in step.items():
                    rows_l.setdefault(w, {})[t] = rows_l.get(w, {}).get(t, f.zero) - s
            for name, rows in (("assoc-r", rows_a), ("mixed", rows_m), ("assoc-l", rows_l)):
                for w, row in sorted(rows.items()):
                    row = {t: c for t, c in row.items() if c}
                    if row:
                        yield (name, i, j, w), row, f.zero


def _solve_tagged(field, ncols, equations):
    """Solve a tagged equation list; on inconsistency re-run with provenance
    tracking to extract a combination witness."""
    ss = SparseSystem(field, ncols)
    eqs = list(equations)
    for tag, row, rhs in eqs:
        ss.add(row, rhs, tag=tag)
    if ss.consistent:
        return ss, None
    tracked = SparseSystem(field, ncols, track=True)
    for tag, row, rhs in eqs:
        tracked.add(row, rhs, tag=tag)
        if not tracked.consistent:
            break
    prov, rhs = tracked.witness()
    witness = tuple(sorted(prov.items(), key=lambda kv: repr(kv[0])))
    return None, (witness, rhs)


def verify_idempotent_identities(a: GradedAlgebra, env: EnvelopingAlgebra, b):
    """Re-check mu(b) = 1 and the five identity families by evaluation.

    Returns ((family, checks passed), ...); raises on any failure.
    """
    bim = env.as_bimodule()
    counts = []
    if env.mu(b) != a.unit:
        raise ActionLawViolation("certificate-mu", None, "mu(b) != 1")
    counts.append(("mu", 1))
    n = 0
    for i in range(a.dim):
        if bim.act_left_basis(i, b) != bim.act_right_basis(i, b):
            raise ActionLawViolation("certificate-comm", i, "x b != b x at %d" % i)
        n += 1
    counts.append(("commute", n))
    n = 0
    for i in range(a.dim):
        bi = a.basis_vec(i)
        xb = bim.act_left_basis(i, b)
        bx = bim.act_right_basis(i, b)
        for j in range(a.dim):
            prod = a.mul(bi, a.basis_vec(j))
            if bim.act_right(b, prod) != bim.act_right_basis(j, bx):
                raise ActionLawViolation("certificate-assoc-r", (i, j),
                                         "b(xy) != (bx)y at (%d, %d)" % (i, j))
            if bim.act_right_basis(j, xb) != bim.act_left_basis(i, bim.act_right_basis(j, b)):
                raise ActionLawViolation("certificate-mixed", (i, j),
                                         "(xb)y != x(by) at (%d, %d)" % (i, j))
            if bim.act_left(prod, b) != bim.act_left_basis(i, bim.act_left_basis(j, b)):
                raise ActionLawViolation("certificate-assoc-l", (i, j),
                                         "(xy)b != x(yb) at (%d, %d)" % (i, j))
            n += 3
    counts.append(("associate", n))
    return tuple(counts)


def separating_idempotent(a: GradedAlgebra):
    """Solve for a separating idempotent; certificate or certified failure."""
    env = get_enveloping(a)
    ss, failure = _solve_tagged(a.field, env.dim, idempotent_equations(a, env))
    if failure is not None:
        return NotSeparable(*failure)
    b = ss.particular()
    families = verify_idempotent_identities(a, env, b)
    return SeparabilityCertificate(b, ss.kernel().dim, families)


@dataclass(frozen=True)
class SplittingMap:
    """p : A -> A^e commuting with both actions, with mu o p = id."""

    matrix: tuple

    separable = True


@dataclass(frozen=True)
class NoSplitting:
    witness: tuple
    value: object

    separable = False


def splitting_equations(a: GradedAlgebra, env: EnvelopingAlgebra):
    """Tagged equations for an action-commuting p with mu o p = id, over
    packed (source basis, tensor coordinate) slots ordered source-major."""
    reg = get_regular_bimodule(a)
    ebim = env.as_bimodule()
    f = a.field
    slots = tuple((j, t) for j in range(a.dim) for t in range(env.dim))
    index = {s: n for n, s in enumerate(slots)}
    for tag, row in _hom_rows(a, reg, ebim, slots, index):
        yield ("hom",) + tag, row, f.zero
    for j in range(a.dim):
        for k in range(a.dim):
            row = {}
            for t in range(env.dim):
                c = env.mu_rows[k][t]
                if c:
                    row[index[(j, t)]] = c
            yield ("mu-p", j, k), row, (f.one if j == k else f.zero)


def splitting_homomorphism(a: GradedAlgebra):
    """Solve mu o p = id over action-commuting maps A -> A^e."""
    env = get_enveloping(a)
    reg = get_regular_bimodule(a)
    ebim = env.as_bimodule()
    f = a.field
    slots = tuple((j, t) for j in range(a.dim) for t in range(env.dim))
    ss, failure = _solve_tagged(f, len(slots), splitting_equations(a, env))
    if failure is not None:
        return NoSplitting(*failure)
    vec = ss.particular()
    rows = [[f.zero] * a.dim for _ in range(env.dim)]
    for (j, t), c in zip(slots, vec):
        rows[t][j] = c
    matrix = tuple(tuple(r) for r in rows)
    # exact re-verification
    if not verify_hom(a, reg, ebim, matrix):
        raise ActionLawViolation("splitting", None, "solution fails commuting check")
    for j in range(a.dim):
        if env.mu(mat_vec(matrix, a.basis_vec(j))) != a.basis_vec(j):
            raise ActionLawViolation("splitting-mu", j, "mu(p(x)) != x")
    return SplittingMap(matrix)


def verify_infeasibility_witness(equations, ncols, witness, value, field):
    """Check a combination witness against a tagged equation family.

    The witness certifies inconsistency offline: the stated combination of
    equation rows must vanish identically while the same combination of
    right-hand sides equals the recorded nonzero value.
    """
    if not value:
        return False
    coeffs = dict(witness)
    acc = {}
    rhs_acc = field.zero
    seen = set()
    for tag, row, rhs in equations:
        c = coeffs.get(tag)
        if c is None:
            continue
        seen.add(tag)
        for col, x in row.items():
            nv = acc.get(col)
            nv = c * x if nv is None else nv + c * x
            if nv:
                acc[col] = nv
            else:
                acc.pop(col, None)
        rhs_acc = rhs_acc + c * rhs
    if seen != set(coeffs):
        return False
    return not acc and rhs_acc == value


def certificate_from_splitting(a: GradedAlgebra, p: SplittingMap) -> SeparabilityCertificate:
    """b = p(1) is a separating idempotent; verified exactly."""
    env = get_enveloping(a)
    b = mat_vec(p.matrix, a.unit)
    families = verify_idempotent_identities(a, env, b)
    return SeparabilityCertificate(b, -1, families)


def splitting_from_certificate(a: GradedAlgebra, cert: SeparabilityCertificate) -> SplittingMap:
    """p(x) = b.x is an action-commuting splitting of mu; verified exactly."""
    env = get_enveloping(a)
    bim = env.as_bimodule()
    cols = [bim.act_right(cert.b, a.basis_vec(j)) for j in range(a.dim)]
    matrix = tuple(tuple(cols[j][t] for j in range(a.dim)) for t in range(env.dim))
    reg = get_regular_bimodule(a)
    if not verify_hom(a, reg, bim, matrix):
        raise ActionLawViolation("b-splitting", None, "p(x) = b.x fails commuting check")
    for j in range(a.dim):
        if env.mu(mat_vec(matrix, a.basis_vec(j))) != a.basis_vec(j):
            raise ActionLawViolation("b-splitting-mu", j, "mu(b.x) != x")
    return SplittingMap(matrix)

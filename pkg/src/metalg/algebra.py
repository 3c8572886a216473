"""Finite-dimensional algebras from metagroup tables, their enveloping
algebras, and verified two-sided module structures.

Algebra elements are plain coefficient tuples over the stored basis; all
arithmetic is exact in the algebra's field.  A metagroup algebra has one
basis element per psi-coset of the table (the coset of the unit is always
represented by the unit itself), so the 16-element octonion unit table
yields the 8-dimensional octonion algebra once -1 is identified with the
scalar -1.  Such algebras are *monomial*: every basis product is a single
scaled basis element, and associativity holds exactly up to the central
associator pushed through the scalar embedding ("the twist").

The enveloping algebra lives on basis pairs (i, j'), with the product
(a (x) b')(c (x) d') = (ac) (x) (db)' and the augmentation
mu(a (x) b') = ab.  The two-sided action of the base algebra carries a
twist correction chosen so that mu is exactly equivariant,
mu(x.z) = x.mu(z) and mu(z.y) = mu(z).y, for twisted algebras as well;
with a trivial associator the correction disappears and the classical
formulas x.(a (x) b') = (xa) (x) b', (a (x) b').y = a (x) (by)' hold
verbatim.  Every constructed module structure is certified against the
twisted mixed-associativity laws on all basis triples before use.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    Subspace,
    complement_and_projections,
    mat_vec,
    transpose,
    unit_vec,
    vadd,
    vscale,
    vzero,
    is_zero_vec,
)
from .metagroup import MetagroupTable


class BadEmbedding(Exception):
    """The psi -> scalar map is not a valid multiplicative embedding."""


class ActionLawViolation(Exception):
    """A module action law failed.  Carries the law name and witness."""

    def __init__(self, law, witness, message):
        super().__init__(message)
        self.law = law
        self.witness = witness


class NotAnIdeal(Exception):
    def __init__(self, witness, message):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class PsiEmbedding:
    """Multiplicative identification of the psi subgroup with scalars."""

    values: tuple  # pairs (psi element index, field element)

    def as_dict(self):
        return dict(self.values)

    @classmethod
    def of(cls, mapping):
        return cls(tuple(sorted(mapping.items())))


def default_embedding(m: MetagroupTable, field) -> PsiEmbedding:
    """e -> 1; for psi = {e, rho} additionally rho -> -1."""
    if m.psi == (m.unit,):
        return PsiEmbedding.of({m.unit: field.one})
    if len(m.psi) == 2:
        rho = [s for s in m.psi if s != m.unit][0]
        return PsiEmbedding.of({m.unit: field.one, rho: -field.one})
    raise BadEmbedding(
        "no default scalar embedding for psi of order %d; supply one" % len(m.psi)
    )


def _check_embedding(m: MetagroupTable, field, emb: PsiEmbedding):
    vals = emb.as_dict()
    if set(vals) != set(m.psi):
        raise BadEmbedding("embedding keys %s do not match psi %s" % (sorted(vals), list(m.psi)))
    if vals[m.unit] != field.one:
        raise BadEmbedding("embedding must send the unit to 1")
    for s in m.psi:
        if not vals[s]:
            raise BadEmbedding("embedding value of %d is zero" % s)
        for t in m.psi:
            if vals[m.mul(s, t)] != vals[s] * vals[t]:
                raise BadEmbedding("embedding is not multiplicative at (%d, %d)" % (s, t))
    if len(set(vals.values())) != len(vals):
        raise BadEmbedding("embedding is not injective")
    return vals


class GradedAlgebra:
    """Structure-constant algebra, optionally graded by a metagroup.

    ``structure[i][j]`` is a tuple of (basis index, coefficient) terms for
    the product of basis elements i and j.  ``grading`` maps each basis
    index to the metagroup element it represents (None for ungraded
    algebras such as quotients or raw structure-constant input); the twist
    on a triple of basis indices is the embedded associator of their
    grades, and is identically 1 in the ungraded case.
    """

    def __init__(self, field, structure, unit, labels=None, grading=None,
                 metagroup=None, embedding=None, name=""):
        self.field = field
        self.dim = len(structure)
        self.structure = tuple(tuple(tuple(terms) for terms in row) for row in structure)
        self.unit = tuple(unit)
        self.labels = tuple(labels) if labels else tuple("b%d" % i for i in range(self.dim))
        self.grading = tuple(grading) if grading is not None else None
        self.metagroup = metagroup
        self.embedding = embedding
        self.name = name
        self._emb = embedding.as_dict() if embedding is not None else None
        self._check_unit()

    # -- basic arithmetic ---------------------------------------------------

    def zero(self):
        return vzero(self.field, self.dim)

    def basis_vec(self, i):
        return unit_vec(self.field, self.dim, i)

    def mul_basis(self, i, j):
        return self.structure[i][j]

    def mul(self, x, y):
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.structure[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, s in row[j]:
                    out[k] = out[k] + c * s
        return tuple(out)

    def is_graded(self):
        return self.grading is not None

    def twist(self, i, j, k):
        """Embedded associator of the grades of basis elements i, j, k."""
        if self.grading is None:
            return self.field.one
        return self.twist_elems(self.grading[i], self.grading[j], self.grading[k])

    def twist_elems(self, gi, gj, gk):
        if self.grading is None:
            return self.field.one
        return self._emb[self.metagroup.associator(gi, gj, gk)]

    # -- multiplication operators -------------------------------------------

    def left_mult_matrix(self, i):
        rows = [[self.field.zero] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, s in self.structure[i][j]:
                rows[k][j] = rows[k][j] + s
        return tuple(tuple(r) for r in rows)

    def right_mult_matrix(self, i):
        rows = [[self.field.zero] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, s in self.structure[j][i]:
                rows[k][j] = rows[k][j] + s
        return tuple(tuple(r) for r in rows)

    def left_mult_of(self, x):
        rows = [[self.field.zero] * self.dim for _ in range(self.dim)]
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j in range(self.dim):
                for k, s in self.structure[i][j]:
                    rows[k][j] = rows[k][j] + xi * s
        return tuple(tuple(r) for r in rows)

    def right_mult_of(self, x):
        rows = [[self.field.zero] * self.dim for _ in range(self.dim)]
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j in range(self.dim):
                for k, s in self.structure[j][i]:
                    rows[k][j] = rows[k][j] + xi * s
        return tuple(tuple(r) for r in rows)

    # -- display ------------------------------------------------------------

    def fmt(self, v):
        parts = []
        for i, c in enumerate(v):
            if not c:
                continue
            cs = self.field.fmt(c)
            parts.append("%s*%s" % (cs, self.labels[i]))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        kind = "graded" if self.is_graded() else "ungraded"
        label = " %r" % self.name if self.name else ""
        return "GradedAlgebra(%s, dim %d, %s)" % (label.strip() or "-", self.dim, kind)

    # -- checks -------------------------------------------------------------

    def _check_unit(self):
        for i in range(self.dim):
            b = self.basis_vec(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise ActionLawViolation("unit", i, "stored unit is not a two-sided identity")

    def check_twisted_associativity(self):
        """(b_i b_j) b_k == twist(i,j,k) * (b_i (b_j b_k)) on all triples."""
        for i in range(self.dim):
            bi = self.basis_vec(i)
            for j in range(self.dim):
                bij = self.mul(bi, self.basis_vec(j))
                for k in range(self.dim):
                    bk = self.basis_vec(k)
                    lhs = self.mul(bij, bk)
                    rhs = self.mul(bi, self.mul(self.basis_vec(j), bk))
                    if lhs != vscale(self.twist(i, j, k), rhs):
                        raise ActionLawViolation(
                            "twisted-associativity",
                            (i, j, k),
                            "associativity defect at basis triple (%d, %d, %d) "
                            "does not match the embedded associator" % (i, j, k),
                        )


def structure_algebra(field, structure, unit, labels=None, name="") -> GradedAlgebra:
    """An ungraded algebra given by raw structure constants and a unit."""
    return GradedAlgebra(field, structure, unit, labels=labels, name=name)


def has_nontrivial_twist(a: GradedAlgebra) -> bool:
    """Whether some basis triple carries a non-unit embedded associator."""
    if not a.is_graded():
        return False
    cache = getattr(a, "_metalg_cache", None)
    if cache is None:
        cache = a._metalg_cache = {}
    if "twisted" not in cache:
        one = a.field.one
        cache["twisted"] = any(
            a.twist(i, j, k) != one
            for i in range(a.dim)
            for j in range(a.dim)
            for k in range(a.dim)
        )
    return cache["twisted"]


def build_metagroup_algebra(m: MetagroupTable, field, emb: PsiEmbedding = None,
                            name="") -> GradedAlgebra:
    """The algebra of a metagroup over a field, psi identified with scalars.

    The basis is one transversal element per psi-coset (the unit represents
    its own coset, every other coset its smallest element); products push
    the psi part of the table through the embedding.  Grade
    multiplicativity and twisted associativity are verified on all basis
    pairs/triples before the algebra is returned.
    """
    if emb is None:
        emb = default_embedding(m, field)
    vals = _check_embedding(m, field, emb)
    rep_of = {}
    reps = []
    for g in range(m.n):
        coset = {m.mul(s, g) for s in m.psi}
        rep = m.unit if m.unit in coset else min(coset)
        rep_of[g] = rep
    for g in range(m.n):
        if rep_of[g] == g:
            reps.append(g)
    reps.sort()
    index = {g: i for i, g in enumerate(reps)}
    structure = []
    for gi in reps:
        row = []
        for gj in reps:
            prod = m.mul(gi, gj)
            rep = rep_of[prod]
            s = m.rdiv(prod, rep)  # s * rep = prod, s in psi
            row.append(((index[rep], vals[s]),))
        structure.append(tuple(row))
    unit = unit_vec(field, len(reps), index[m.unit])
    labels = tuple(m.name_of(g) for g in reps)
    alg = GradedAlgebra(
        field,
        structure,
        unit,
        labels=labels,
        grading=tuple(reps),
        metagroup=m,
        embedding=emb,
        name=name or ("k[%s]" % (m.n,)),
    )
    # grade multiplicativity: the basis part of b_i b_j is the transversal
    # representative of g_i g_j
    for i, gi in enumerate(reps):
        for j, gj in enumerate(reps):
            ((k, _),) = alg.structure[i][j]
            if alg.grading[k] != rep_of[m.mul(gi, gj)]:
                raise ActionLawViolation("grade", (i, j), "grading is not multiplicative")
    alg.check_twisted_associativity()
    return alg


def multiply(alg: GradedAlgebra, x, y):
    return alg.mul(x, y)


def opposite_algebra(a: GradedAlgebra) -> GradedAlgebra:
    """Same space, reversed multiplication.  The result is stored ungraded
    (its associator is the inverse of the original read backwards)."""
    structure = tuple(tuple(a.structure[j][i] for j in range(a.dim)) for i in range(a.dim))
    return GradedAlgebra(a.field, structure, a.unit, labels=a.labels,
                         name=(a.name + "^op") if a.name else "op")


# ---------------------------------------------------------------------------
# two-sided modules


class Bimodule:
    """A two-sided module with exact action tensors.

    ``left[i]`` and ``right[i]`` hold, for each algebra basis index i, a
    tuple over module basis indices of (output index, coefficient) term
    tuples.  ``grades`` optionally assigns each module basis element a
    metagroup element; when present the twisted mixed-associativity laws
    are certified with the embedded associator of the grades involved,
    otherwise the plain associative laws are required.
    """

    def __init__(self, algebra, dim, left, right, grades=None, labels=None, name=""):
        self.algebra = algebra
        self.dim = dim
        self.left = left
        self.right = right
        self.grades = tuple(grades) if grades is not None else None
        self.labels = tuple(labels) if labels else tuple("m%d" % i for i in range(dim))
        self.name = name

    def zero(self):
        return vzero(self.algebra.field, self.dim)

    def basis_vec(self, u):
        return unit_vec(self.algebra.field, self.dim, u)

    def act_left_basis(self, i, v):
        """Action of algebra basis element i on a module vector."""
        out = [self.algebra.field.zero] * self.dim
        cols = self.left[i]
        for u, c in enumerate(v):
            if not c:
                continue
            for w, s in cols[u]:
                out[w] = out[w] + c * s
        return tuple(out)

    def act_right_basis(self, i, v):
        out = [self.algebra.field.zero] * self.dim
        cols = self.right[i]
        for u, c in enumerate(v):
            if not c:
                continue
            for w, s in cols[u]:
                out[w] = out[w] + c * s
        return tuple(out)

    def act_left(self, x, v):
        """Action of an algebra element (coefficient vector) on v."""
        out = self.zero()
        for i, xi in enumerate(x):
            if xi:
                out = vadd(out, vscale(xi, self.act_left_basis(i, v)))
        return out

    def act_right(self, v, x):
        out = self.zero()
        for i, xi in enumerate(x):
            if xi:
                out = vadd(out, vscale(xi, self.act_right_basis(i, v)))
        return out

    def left_sparse(self, i, sv):
        out = {}
        cols = self.left[i]
        for u, c in sv.items():
            for w, s in cols[u]:
                nv = out.get(w)
                nv = c * s if nv is None else nv + c * s
                if nv:
                    out[w] = nv
                else:
                    del out[w]
        return out

    def right_sparse(self, i, sv):
        out = {}
        cols = self.right[i]
        for u, c in sv.items():
            for w, s in cols[u]:
                nv = out.get(w)
                nv = c * s if nv is None else nv + c * s
                if nv:
                    out[w] = nv
                else:
                    del out[w]
        return out

    def grade_of(self, u):
        return self.grades[u] if self.grades is not None else None

    def __repr__(self):
        return "Bimodule(%s, dim %d over dim-%d algebra)" % (
            self.name or "-", self.dim, self.algebra.dim)


def _sacc(acc, sv, c):
    for w, x in sv.items():
        nv = acc.get(w)
        nv = c * x if nv is None else nv + c * x
        if nv:
            acc[w] = nv
        else:
            del acc[w]


def check_bimodule_laws(m: Bimodule):
    """Certify the mixed associativity laws on every basis triple.

    With grades g on the module and the algebra graded, the laws are
      (xy)u = t(x,y,u) * x(yu)
      u(xy) = t(u,x,y)^{-1} * (ux)y
      (xu)y = t(x,u,y) * x(uy)
    with t the embedded associator of the grades; ungraded data must
    satisfy them with t = 1.  The unit must act as the identity on both
    sides.  Raises ActionLawViolation naming the law and witness triple.
    """
    a = m.algebra
    one = a.field.one
    for u in range(m.dim):
        eu = {u: one}
        acc = {}
        for i, c in enumerate(a.unit):
            if c:
                _sacc(acc, m.left_sparse(i, eu), c)
        if acc != eu:
            raise ActionLawViolation("unit-left", u, "unit does not act as identity on the left")
        acc = {}
        for i, c in enumerate(a.unit):
            if c:
                _sacc(acc, m.right_sparse(i, eu), c)
        if acc != eu:
            raise ActionLawViolation("unit-right", u, "unit does not act as identity on the right")
    graded = m.grades is not None and a.is_graded()
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.structure[i][j]
            for u in range(m.dim):
                eu = {u: one}
                gu = m.grades[u] if graded else None
                t1 = a.twist_elems(a.grading[i], a.grading[j], gu) if graded else one
                lhs = {}
                for k, c in prod:
                    _sacc(lhs, m.left_sparse(k, eu), c)
                rhs = {}
                _sacc(rhs, m.left_sparse(i, m.left_sparse(j, eu)), t1)
                if lhs != rhs:
                    raise ActionLawViolation(
                        "left-left", (i, j, u),
                        "(xy)u != t*(x(yu)) at (%d, %d, %d)" % (i, j, u))
                t2 = a.twist_elems(gu, a.grading[i], a.grading[j]) if graded else one
                lhs = {}
                for k, c in prod:
                    _sacc(lhs, m.right_sparse(k, eu), t2 * c)
                rhs = m.right_sparse(j, m.right_sparse(i, eu))
                if lhs != rhs:
                    raise ActionLawViolation(
                        "right-right", (u, i, j),
                        "u(xy) != t^-1*((ux)y) at (%d, %d, %d)" % (u, i, j))
                t3 = a.twist_elems(a.grading[i], gu, a.grading[j]) if graded else one
                lhs = m.right_sparse(j, m.left_sparse(i, eu))
                rhs = {}
                _sacc(rhs, m.left_sparse(i, m.right_sparse(j, eu)), t3)
                if lhs != rhs:
                    raise ActionLawViolation(
                        "left-right", (i, u, j),
                        "(xu)y != t*(x(uy)) at (%d, %d, %d)" % (i, u, j))
    return m


def build_bimodule(algebra, left, right, grades=None, labels=None, name="") -> Bimodule:
    """Wrap raw action data as a Bimodule and certify all action laws."""
    dim = len(left[0]) if left else 0
    m = Bimodule(algebra, dim, tuple(left), tuple(right), grades=grades,
                 labels=labels, name=name)
    return check_bimodule_laws(m)


def regular_bimodule(a: GradedAlgebra) -> Bimodule:
    """The algebra acting on itself by multiplication."""
    left = tuple(a.structure[i] for i in range(a.dim))
    right = tuple(tuple(a.structure[u][i] for u in range(a.dim)) for i in range(a.dim))
    m = Bimodule(a, a.dim, left, right, grades=a.grading, labels=a.labels,
                 name=(a.name or "A"))
    return check_bimodule_laws(m)


def sub_bimodule(m: Bimodule, s: Subspace, name="") -> Bimodule:
    """Restrict the actions to an invariant subspace, in its canonical basis."""
    a = m.algebra
    f = a.field

    def transport(act):
        cols_out = []
        for i in range(a.dim):
            cols = []
            for bv in s.basis:
                img = act(i, bv)
                coords = s.coords(img)
                if coords is None:
                    raise ActionLawViolation(
                        "invariance", i,
                        "subspace is not invariant under basis element %d" % i)
                cols.append(tuple((w, c) for w, c in enumerate(coords) if c))
            cols_out.append(tuple(cols))
        return tuple(cols_out)

    left = transport(m.act_left_basis)
    right = transport(m.act_right_basis)
    grades = None
    if m.grades is not None:
        grades = []
        ok = True
        for bv in s.basis:
            gs = {m.grades[u] for u, c in enumerate(bv) if c}
            if len(gs) != 1:
                ok = False
                break
            grades.append(gs.pop())
        grades = tuple(grades) if ok else None
    sub = Bimodule(a, s.dim, left, right, grades=grades, name=name or (m.name + "|sub"))
    if grades is not None or not has_nontrivial_twist(a):
        # inhomogeneous submodules of a genuinely twisted module cannot
        # satisfy the scalar-twisted laws basis-wise; they inherit the
        # ambient certification instead
        check_bimodule_laws(sub)
    return sub


def quotient_bimodule(m: Bimodule, s: Subspace, name="") -> Bimodule:
    """Quotient of m by an invariant subspace, on canonical coordinates."""
    a = m.algebra
    spl = complement_and_projections(s)

    def transport(act):
        cols_out = []
        for i in range(a.dim):
            cols = []
            for q in range(m.dim - s.dim):
                rep = tuple(col[q] for col in spl.quot_section)
                img = act(i, rep)
                # well-definedness needs invariance of s
                if act is m.act_left_basis or act is m.act_right_basis:
                    pass
                qimg = mat_vec(spl.quot_proj, img)
                cols.append(tuple((w, c) for w, c in enumerate(qimg) if c))
            cols_out.append(tuple(cols))
        return tuple(cols_out)

    for i in range(a.dim):
        for bv in s.basis:
            if not s.contains(m.act_left_basis(i, bv)) or not s.contains(m.act_right_basis(i, bv)):
                raise ActionLawViolation(
                    "invariance", i, "subspace is not invariant; quotient undefined")
    left = transport(m.act_left_basis)
    right = transport(m.act_right_basis)
    return Bimodule(a, m.dim - s.dim, left, right, name=name or (m.name + "/sub"))


# ---------------------------------------------------------------------------
# enveloping algebra


class EnvelopingAlgebra:
    """Basis pairs (i, j') with product (a(x)b')(c(x)d') = (ac)(x)(db)'.

    Carries the augmentation mu, the two-sided action of the base algebra
    (twist-corrected so that mu is exactly equivariant), and the map
    kappa(x) = x(x)1' - 1(x)x' whose image lies in ker mu.
    """

    def __init__(self, base: GradedAlgebra):
        self.base = base
        d = base.dim
        f = base.field
        self.dim = d * d
        self.pairs = tuple((i, j) for i in range(d) for j in range(d))
        self.labels = tuple(
            "%s(x)%s'" % (base.labels[i], base.labels[j]) for (i, j) in self.pairs
        )
        tindex = lambda i, j: i * d + j
        self.tindex = tindex

        # mu matrix: mu(a (x) b') = ab
        mu_rows = [[f.zero] * self.dim for _ in range(d)]
        for (a, b) in self.pairs:
            for k, s in base.structure[a][b]:
                mu_rows[k][tindex(a, b)] = mu_rows[k][tindex(a, b)] + s
        self.mu_rows = tuple(tuple(r) for r in mu_rows)

        # kappa matrix: kappa(x_i) = sum_j 1_j (e_(i,j) - e_(j,i))
        kap = [[f.zero] * d for _ in range(self.dim)]
        for i in range(d):
            for j, uj in enumerate(base.unit):
                if not uj:
                    continue
                kap[tindex(i, j)][i] = kap[tindex(i, j)][i] + uj
                kap[tindex(j, i)][i] = kap[tindex(j, i)][i] - uj
        self.kappa_rows = tuple(tuple(r) for r in kap)

        # actions of the base algebra, with the twist correction that makes
        # mu exactly equivariant: x.(a(x)b') = t(x,a,b)^{-1} (xa)(x)b' and
        # (a(x)b').y = t(a,b,y) a(x)(by)'
        left = []
        right = []
        for i in range(d):
            lcols = []
            rcols = []
            for (a, b) in self.pairs:
                tw = base.twist(i, a, b)
                lcols.append(tuple((tindex(k, b), s / tw) for k, s in base.structure[i][a]))
                tw = base.twist(a, b, i)
                rcols.append(tuple((tindex(a, k), s * tw) for k, s in base.structure[b][i]))
            left.append(tuple(lcols))
            right.append(tuple(rcols))
        self._left = tuple(left)
        self._right = tuple(right)

        # grade of a tensor: the grade of its mu-image basis element, when
        # that is well defined (monomial base algebras)
        grades = None
        if base.is_graded():
            grades = []
            for (a, b) in self.pairs:
                terms = base.structure[a][b]
                if len(terms) != 1:
                    grades = None
                    break
                grades.append(base.grading[terms[0][0]])
        self.grades = tuple(grades) if grades is not None else None

        # product structure on pure tensors
        struct = []
        for (a, b) in self.pairs:
            row = []
            for (c, dd) in self.pairs:
                terms = tuple(
                    (tindex(k1, k2), s1 * s2)
                    for k1, s1 in base.structure[a][c]
                    for k2, s2 in base.structure[dd][b]
                )
                row.append(terms)
            struct.append(tuple(row))
        unit = [f.zero] * self.dim
        for a, ua in enumerate(base.unit):
            if not ua:
                continue
            for b, ub in enumerate(base.unit):
                if ub:
                    unit[tindex(a, b)] = unit[tindex(a, b)] + ua * ub
        self.algebra = GradedAlgebra(
            f, struct, tuple(unit), labels=self.labels,
            name=(base.name + "^env") if base.name else "env")

        self._verify_mu_equivariance()

    # -- operations ----------------------------------------------------------

    def mu(self, z):
        return mat_vec(self.mu_rows, z)

    def kappa(self, x):
        return mat_vec(self.kappa_rows, x)

    def act_algebra_right(self, x, t):
        """A as a right module over this algebra: x acted on by a pure
        tensor index t = (a, b') gives a(xb)."""
        a, b = self.pairs[t]
        base = self.base
        return base.mul(base.basis_vec(a), base.mul(x, base.basis_vec(b)))

    def as_bimodule(self) -> Bimodule:
        m = Bimodule(self.base, self.dim, self._left, self._right,
                     grades=self.grades, labels=self.labels,
                     name=(self.base.name or "A") + "^e")
        if self.grades is not None or not self.base.is_graded():
            check_bimodule_laws(m)
        return m

    def kernel_of_mu(self):
        """The augmentation kernel as (subspace of tensor space, bimodule)."""
        from .linalg import kernel_basis

        s = kernel_basis(self.base.field, self.mu_rows, self.dim)
        bim = sub_bimodule(self.as_bimodule(), s, name="ker_mu")
        return s, bim

    def _verify_mu_equivariance(self):
        base = self.base
        f = base.field
        bim = Bimodule(base, self.dim, self._left, self._right)
        mu_cols = [[] for _ in range(self.dim)]
        for k, mrow in enumerate(self.mu_rows):
            for t, c in enumerate(mrow):
                if c:
                    mu_cols[t].append((k, c))

        def mu_sparse(sv):
            acc = {}
            for t, c in sv.items():
                for k, x in mu_cols[t]:
                    nv = acc.get(k)
                    nv = c * x if nv is None else nv + c * x
                    if nv:
                        acc[k] = nv
                    else:
                        del acc[k]
            return acc

        one = f.one
        for i in range(base.dim):
            bi = base.basis_vec(i)
            for t in range(self.dim):
                et = {t: one}
                lhs = mu_sparse(bim.left_sparse(i, et))
                mu_t = mu_sparse(et)
                rhs = {}
                for k, c in mu_t.items():
                    for k2, s in base.structure[i][k]:
                        nv = rhs.get(k2)
                        nv = c * s if nv is None else nv + c * s
                        if nv:
                            rhs[k2] = nv
                        else:
                            del rhs[k2]
                if lhs != rhs:
                    raise ActionLawViolation(
                        "mu-left", (i, t),
                        "mu(x.z) != x.mu(z) at basis pair (%d, %d); the "
                        "enveloping construction is inconsistent for this "
                        "algebra" % (i, t))
                lhs = mu_sparse(bim.right_sparse(i, et))
                rhs = {}
                for k, c in mu_t.items():
                    for k2, s in base.structure[k][i]:
                        nv = rhs.get(k2)
                        nv = c * s if nv is None else nv + c * s
                        if nv:
                            rhs[k2] = nv
                        else:
                            del rhs[k2]
                if lhs != rhs:
                    raise ActionLawViolation(
                        "mu-right", (i, t),
                        "mu(z.y) != mu(z).y at basis pair (%d, %d)" % (i, t))
        # mu o kappa = 0
        for i in range(base.dim):
            if not is_zero_vec(self.mu(self.kappa(base.basis_vec(i)))):
                raise ActionLawViolation("mu-kappa", i, "mu(kappa(x)) != 0")

    def __repr__(self):
        return "EnvelopingAlgebra(dim %d over %r)" % (self.dim, self.base)


def enveloping_algebra(a: GradedAlgebra) -> EnvelopingAlgebra:
    return EnvelopingAlgebra(a)


def mu(e: EnvelopingAlgebra, z):
    return e.mu(z)


def kappa(e: EnvelopingAlgebra, x):
    return e.kappa(x)


# ---------------------------------------------------------------------------
# ideals and quotients


@dataclass(frozen=True)
class QuotientData:
    """A quotient algebra with its projection and canonical linear section."""

    parent: GradedAlgebra
    algebra: GradedAlgebra
    ideal: Subspace
    proj: tuple      # (dim quotient) x (dim parent)
    section: tuple   # (dim parent) x (dim quotient)

    def project(self, v):
        return mat_vec(self.proj, v)

    def lift(self, q):
        return mat_vec(self.section, q)


def verify_two_sided_ideal(a: GradedAlgebra, s: Subspace):
    for i in range(a.dim):
        bi = a.basis_vec(i)
        for bv in s.basis:
            if not s.contains(a.mul(bi, bv)):
                raise NotAnIdeal((i, bv), "A*I escapes I at basis element %d" % i)
            if not s.contains(a.mul(bv, bi)):
                raise NotAnIdeal((i, bv), "I*A escapes I at basis element %d" % i)


def quotient_algebra(a: GradedAlgebra, ideal: Subspace) -> QuotientData:
    """Structure constants induced on the canonical complement of an ideal.

    The section is a genuine linear right inverse of the projection; the
    projection is verified to be an algebra map on basis pairs.  Grading
    survives exactly when the ideal is spanned by basis elements of the
    parent (so the surviving coordinates keep their grades).
    """
    verify_two_sided_ideal(a, ideal)
    if ideal.dim == a.dim:
        raise ValueError("quotient by the whole algebra has dimension 0 and no unit")
    f = a.field
    spl = complement_and_projections(ideal)
    qdim = a.dim - ideal.dim
    sect_cols = transpose(spl.quot_section)  # rows = quotient basis reps
    structure = []
    for qi in range(qdim):
        row = []
        vi = sect_cols[qi]
        for qj in range(qdim):
            prod = a.mul(vi, sect_cols[qj])
            qprod = mat_vec(spl.quot_proj, prod)
            row.append(tuple((k, c) for k, c in enumerate(qprod) if c))
        structure.append(tuple(row))
    unit_q = mat_vec(spl.quot_proj, a.unit)
    grading = None
    emb = None
    mg = None
    if a.is_graded() and all(sum(1 for c in bv if c) == 1 for bv in ideal.basis):
        kept = [c for c in range(a.dim) if c not in set(ideal.pivots)]
        grading = tuple(a.grading[c] for c in kept)
        emb = a.embedding
        mg = a.metagroup
    labels = None
    if all(sum(1 for c in v if c) == 1 for v in spl.complement.basis):
        labels = tuple(a.labels[p] for p in spl.complement.pivots)
    quot = GradedAlgebra(f, structure, unit_q, labels=labels, grading=grading,
                         metagroup=mg, embedding=emb,
                         name=(a.name + "/I") if a.name else "quotient")
    qd = QuotientData(a, quot, ideal, spl.quot_proj, spl.quot_section)
    # projection is an algebra map on a basis, and proj o section = id
    for i in range(a.dim):
        bi = a.basis_vec(i)
        for j in range(a.dim):
            bj = a.basis_vec(j)
            if qd.project(a.mul(bi, bj)) != quot.mul(qd.project(bi), qd.project(bj)):
                raise NotAnIdeal((i, j), "projection fails multiplicativity at (%d, %d)" % (i, j))
    for q in range(qdim):
        eq = unit_vec(f, qdim, q)
        if qd.project(qd.lift(eq)) != eq:
            raise NotAnIdeal(q, "section is not a right inverse of the projection")
    return qd


def subspace_product(a: GradedAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """The span of all products of elements of u with elements of v."""
    vecs = [a.mul(x, y) for x in u.basis for y in v.basis]
    return Subspace.from_vectors(a.field, a.dim, vecs)


def left_power_chain(a: GradedAlgebra, j: Subspace, bound=None):
    """[J, J J, J (J J), ...] until it vanishes or stabilises."""
    chain = [j]
    limit = bound if bound is not None else a.dim + 1
    while chain[-1].dim and len(chain) <= limit:
        nxt = subspace_product(a, j, chain[-1])
        if nxt.dim == chain[-1].dim:
            chain.append(nxt)
            break
        chain.append(nxt)
    return chain


def right_power_chain(a: GradedAlgebra, j: Subspace, bound=None):
    chain = [j]
    limit = bound if bound is not None else a.dim + 1
    while chain[-1].dim and len(chain) <= limit:
        nxt = subspace_product(a, chain[-1], j)
        if nxt.dim == chain[-1].dim:
            chain.append(nxt)
            break
        chain.append(nxt)
    return chain


def ideal_bimodule_over_quotient(qd: QuotientData, name="") -> Bimodule:
    """The ideal as a two-sided module over the quotient, acting through
    the canonical section.  Requires ideal^2 = 0 so the actions are
    independent of the choice of section."""
    a = qd.parent
    j = qd.ideal
    jj = subspace_product(a, j, j)
    if jj.dim:
        raise ActionLawViolation(
            "square-zero", None,
            "ideal squared is nonzero; section-independent module structure needs I^2 = 0")
    quot = qd.algebra
    left = []
    right = []
    for i in range(quot.dim):
        lift = qd.lift(quot.basis_vec(i))
        lcols = []
        rcols = []
        for bv in j.basis:
            img = a.mul(lift, bv)
            coords = j.coords(img)
            if coords is None:
                raise NotAnIdeal((i, bv), "section action escapes the ideal")
            lcols.append(tuple((w, c) for w, c in enumerate(coords) if c))
            img = a.mul(bv, lift)
            coords = j.coords(img)
            if coords is None:
                raise NotAnIdeal((i, bv), "section action escapes the ideal")
            rcols.append(tuple((w, c) for w, c in enumerate(coords) if c))
        left.append(tuple(lcols))
        right.append(tuple(rcols))
    m = Bimodule(quot, j.dim, tuple(left), tuple(right), name=name or "ideal")
    return check_bimodule_laws(m)

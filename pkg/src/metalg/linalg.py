"""Exact linear algebra over the workbench fields.

Vectors are tuples of field elements, matrices are tuples of row tuples.
Subspaces always store the reduced row echelon basis of their span, so two
equal subspaces compare equal as plain data.

Dense elimination over the rationals clears denominators and runs
fraction-free (Bareiss) to keep intermediate integers small; over GF(p) it
is ordinary Gaussian elimination.  Large, very sparse systems (module
homomorphism spaces, cocycle conditions, separability identities) go
through :class:`SparseSystem`, an incremental reduced-echelon solver on
dict rows that can also track how each consequence was derived from the
input equations, yielding inconsistency witnesses.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# vectors


def vzero(field, n):
    return tuple(field.zero for _ in range(n))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def is_zero_vec(v):
    return not any(v)


def unit_vec(field, n, i):
    return tuple(field.one if j == i else field.zero for j in range(n))


# ---------------------------------------------------------------------------
# matrices (tuple of row tuples)


def mzero(field, rows, cols):
    return tuple(vzero(field, cols) for _ in range(rows))


def midentity(field, n):
    return tuple(unit_vec(field, n, i) for i in range(n))


def mat_vec(m, v):
    out = []
    for r in m:
        acc = None
        for x, y in zip(r, v):
            acc = x * y if acc is None else acc + x * y
        out.append(acc)
    return tuple(out)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def dot(u, v):
    acc = None
    for x, y in zip(u, v):
        t = x * y
        acc = t if acc is None else acc + t
    if acc is None:
        raise ValueError("dot product of empty vectors needs a field context")
    return acc


def transpose(m):
    if not m:
        return ()
    return tuple(zip(*m))


# ---------------------------------------------------------------------------
# reduced row echelon form


def _rref_generic(rows, field):
    """Plain in-place RREF over any field.  Returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _int_rows(rows):
    """Scale each rational row to integers (does not change the row space)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _rref_rational(rows):
    """Fraction-free forward elimination (Bareiss), then exact back pass.

    Intermediate entries stay integers, with exact divisions by the previous
    pivot; only the final normalisation reintroduces fractions.
    """
    irows = _int_rows(rows)
    if not irows:
        return [], []
    ncols = len(irows[0])
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        pr = None
        for i in range(r, len(irows)):
            if irows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        irows[r], irows[pr] = irows[pr], irows[r]
        piv = irows[r][c]
        for i in range(r + 1, len(irows)):
            if not any(irows[i]):
                continue
            f = irows[i][c]
            irows[i] = [(piv * irows[i][j] - f * irows[r][j]) // prev for j in range(ncols)]
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(irows):
            break
    # back pass with exact rational arithmetic
    out = [[Fraction(x) for x in irows[i]] for i in range(r)]
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        inv = Fraction(1) / out[i][c]
        out[i] = [x * inv for x in out[i]]
        for k in range(i):
            f = out[k][c]
            if f:
                out[k] = [x - f * y for x, y in zip(out[k], out[i])]
    return out, pivots


def rref(field, rows):
    """Reduced row echelon form.  Returns (tuple of rows, tuple of pivots)."""
    if field.char == 0:
        rws, piv = _rref_rational(rows)
    else:
        rws, piv = _rref_generic(rows, field)
    return tuple(tuple(r) for r in rws), tuple(piv)


def rank(field, rows):
    return len(rref(field, rows)[1])


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A linear subspace held as its canonical reduced-echelon basis.

    Equal subspaces have literally equal ``basis`` fields, so ``==`` is a
    genuine subspace equality test.
    """

    __slots__ = ("field", "ambient", "basis", "pivots", "_supports")

    def __init__(self, field, ambient, basis, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots
        self._supports = None

    @classmethod
    def from_vectors(cls, field, ambient, vectors):
        rows, pivots = rref(field, [tuple(v) for v in vectors])
        return cls(field, ambient, rows, pivots)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, midentity(field, ambient), tuple(range(ambient)))

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, v):
        """Coefficients of v in the stored basis, or None if v is outside."""
        if self._supports is None:
            self._supports = tuple(
                tuple(j for j, x in enumerate(row) if x) for row in self.basis
            )
        w = list(v)
        cs = []
        for row, p, supp in zip(self.basis, self.pivots, self._supports):
            c = w[p]
            cs.append(c)
            if c:
                for j in supp:
                    w[j] = w[j] - c * row[j]
        if any(w):
            return None
        return tuple(cs)

    def contains(self, v):
        return self.coords(v) is not None

    def contains_subspace(self, other):
        return all(self.contains(b) for b in other.basis)

    def add(self, other):
        return Subspace.from_vectors(self.field, self.ambient, self.basis + other.basis)

    def intersect(self, other):
        """Intersection, via the kernel of the stacked-coefficient map."""
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        cols = []
        for b in self.basis:
            cols.append(tuple(b))
        for b in other.basis:
            cols.append(tuple(-x for x in b))
        ker = kernel_basis(self.field, transpose(tuple(cols)))
        vecs = []
        for kv in ker.basis:
            coeffs = kv[: self.dim]
            v = vzero(self.field, self.ambient)
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = vadd(v, vscale(c, b))
            vecs.append(v)
        return Subspace.from_vectors(self.field, self.ambient, vecs)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return "Subspace(dim %d of %d)" % (self.dim, self.ambient)


def kernel_basis(field, rows, ncols=None):
    """Canonical basis of {v : rows @ v = 0} as a Subspace."""
    if ncols is None:
        if not rows:
            raise ValueError("kernel of an empty matrix needs an explicit ncols")
        ncols = len(rows[0])
    rr, pivots = rref(field, rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    vecs = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(rr, pivots):
            if row[f]:
                v[p] = -row[f]
        vecs.append(tuple(v))
    return Subspace.from_vectors(field, ncols, vecs)


def solve(field, rows, rhs):
    """One exact solution of rows @ x = rhs plus the kernel, or None.

    The particular solution is canonical: free variables are zero in the
    reduced echelon form of the augmented system.
    """
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    rr, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, p in zip(rr, pivots):
        x[p] = row[ncols]
    return tuple(x), kernel_basis(field, rows, ncols)


class Splitting:
    """A direct-sum decomposition ambient = V (+) complement.

    Carries the idempotent projection onto V, the projection onto quotient
    coordinates (indexed by the complement basis) and its section, with
    quot_proj o quot_section = identity.
    """

    __slots__ = ("subspace", "complement", "proj", "quot_proj", "quot_section")

    def __init__(self, subspace, complement, proj, quot_proj, quot_section):
        self.subspace = subspace
        self.complement = complement
        self.proj = proj
        self.quot_proj = quot_proj
        self.quot_section = quot_section


def complement_and_projections(v: Subspace) -> Splitting:
    """Canonical complement of v: unit vectors at the non-pivot coordinates."""
    field, n = v.field, v.ambient
    pivset = set(v.pivots)
    free = [c for c in range(n) if c not in pivset]
    comp = Subspace.from_vectors(field, n, [unit_vec(field, n, f) for f in free])
    # T has the basis of v then the complement as columns; solve T y = x to
    # split x, so proj = T diag(1..1,0..0) T^{-1}.
    cols = list(v.basis) + list(comp.basis)
    t = transpose(tuple(cols))
    tinv = invert(field, t)
    k = v.dim
    sel = tuple(
        tuple(field.one if (i == j and i < k) else field.zero for j in range(n))
        for i in range(n)
    )
    proj = mat_mul(t, mat_mul(sel, tinv))
    quot_proj = tuple(tinv[k:])
    quot_section = transpose(tuple(comp.basis))
    return Splitting(v, comp, proj, quot_proj, quot_section)


def invert(field, m):
    n = len(m)
    aug = [tuple(m[i]) + unit_vec(field, n, i) for i in range(n)]
    rr, pivots = rref(field, aug)
    if list(pivots[:n]) != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rr)


# ---------------------------------------------------------------------------
# sparse incremental elimination


def _spadd_scaled(dst, src, coef):
    for c, x in src.items():
        nv = dst.get(c)
        nv = -coef * x if nv is None else nv - coef * x
        if nv:
            dst[c] = nv
        else:
            dst.pop(c, None)


def _int_gcd_all(row, extra):
    g = abs(extra)
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


class SparseSystem:
    """Incremental exact elimination on sparse linear equations.

    Rows are dicts column->value with an optional right-hand side; the row
    echelon form of everything added so far is maintained (fully reduced
    lazily), which makes particular solutions and kernels canonical
    regardless of the order equations arrive in.  With ``track=True``
    every pivot row carries the linear combination of input rows it was
    derived from, so an inconsistent system yields a checkable witness:
    coefficients lambda with sum(lambda_i * row_i) = 0 but
    sum(lambda_i * rhs_i) != 0.

    Over the rationals, rows are scaled to primitive integer vectors and
    eliminated by cross-multiplication with per-row gcd reduction:
    fraction-free arithmetic throughout, rationals only at the solution /
    kernel boundary.  Over GF(p) the generic normalized elimination runs
    directly on field elements.
    """

    def __init__(self, field, ncols, track=False):
        self.field = field
        self.ncols = ncols
        self.track = track
        self.pivots = {}
        self.inconsistency = None
        self._count = 0
        self._seen = set()
        self._reduced = True
        self._int_mode = field.char == 0

    def _to_int_row(self, row, rhs, tag):
        den = rhs.denominator
        for x in row.values():
            den = den * x.denominator // gcd(den, x.denominator)
        irow = {c: int(x * den) for c, x in row.items()}
        irhs = int(rhs * den)
        prov = {tag: Fraction(den)} if self.track else None
        return irow, irhs, prov

    def add(self, row, rhs=None, tag=None):
        """Feed one equation.  Returns True if it added a new pivot."""
        f = self.field
        if rhs is None:
            rhs = f.zero
        row = {c: x for c, x in row.items() if x}
        if row:
            # scaled duplicates are frequent in monomial systems; skip them
            lead = row[min(row)]
            sig = (tuple(sorted((c, x / lead) for c, x in row.items())), rhs / lead)
            if sig in self._seen:
                return False
            self._seen.add(sig)
        if tag is None:
            tag = self._count
        self._count += 1
        if self._int_mode:
            return self._add_int(row, rhs, tag)
        return self._add_field(row, rhs, tag)

    def _add_field(self, row, rhs, tag):
        f = self.field
        prov = {tag: f.one} if self.track else None
        # forward reduction; subtracting the pivot row at c introduces only
        # columns > c, so scanning in increasing column order terminates
        while row:
            hit = None
            for c in sorted(row):
                if c in self.pivots:
                    hit = c
                    break
            if hit is None:
                break
            coef = row[hit]
            prow, prhs, pprov = self.pivots[hit]
            _spadd_scaled(row, prow, coef)
            rhs = rhs - coef * prhs
            if prov is not None:
                _spadd_scaled(prov, pprov, coef)
        if not row:
            if rhs and self.inconsistency is None:
                self.inconsistency = (prov, rhs)
            return False
        p = min(row)
        inv = f.one / row[p]
        row = {c: inv * x for c, x in row.items()}
        rhs = inv * rhs
        if prov is not None:
            prov = {t: inv * x for t, x in prov.items()}
        self.pivots[p] = (row, rhs, prov)
        self._reduced = False
        return True

    def _add_int(self, row, rhs, tag):
        row, rhs, prov = self._to_int_row(row, rhs, tag)
        while row:
            hit = None
            for c in sorted(row):
                if c in self.pivots:
                    hit = c
                    break
            if hit is None:
                break
            prow, prhs, pprov = self.pivots[hit]
            a = prow[hit]
            b = row[hit]
            g = gcd(a, b)
            a //= g
            b //= g
            # row <- a*row - b*prow  (integer, kills column hit)
            for c in row:
                row[c] = a * row[c]
            for c, x in prow.items():
                nv = row.get(c, 0) - b * x
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs = a * rhs - b * prhs
            if prov is not None:
                prov = {t: a * x for t, x in prov.items()}
                for t, x in pprov.items():
                    nv = prov.get(t, 0) - b * x
                    if nv:
                        prov[t] = nv
                    else:
                        prov.pop(t, None)
            g = _int_gcd_all(row, rhs)
            if g > 1:
                row = {c: x // g for c, x in row.items()}
                rhs //= g
                if prov is not None:
                    prov = {t: x / g for t, x in prov.items()}
        if not row:
            if rhs and self.inconsistency is None:
                self.inconsistency = (prov, Fraction(rhs))
            return False
        g = _int_gcd_all(row, rhs)
        if g > 1:
            row = {c: x // g for c, x in row.items()}
            rhs //= g
            if prov is not None:
                prov = {t: x / g for t, x in prov.items()}
        self.pivots[min(row)] = (row, rhs, prov)
        self._reduced = False
        return True

    def _finalize(self):
        """Back-substitute so every pivot row is clear of other pivots."""
        if self._reduced:
            return
        if self._int_mode:
            for p in sorted(self.pivots, reverse=True):
                row, rhs, prov = self.pivots[p]
                for q in self.pivots:
                    if q >= p:
                        continue
                    qrow, qrhs, qprov = self.pivots[q]
                    b = qrow.get(p)
                    if not b:
                        continue
                    a = row[p]
                    g = gcd(a, b)
                    a //= g
                    b //= g
                    for c in qrow:
                        qrow[c] = a * qrow[c]
                    for c, x in row.items():
                        nv = qrow.get(c, 0) - b * x
                        if nv:
                            qrow[c] = nv
                        else:
                            qrow.pop(c, None)
                    qrhs = a * qrhs - b * rhs
                    if qprov is not None:
                        qprov2 = {t: a * x for t, x in qprov.items()}
                        for t, x in prov.items():
                            nv = qprov2.get(t, 0) - b * x
                            if nv:
                                qprov2[t] = nv
                            else:
                                qprov2.pop(t, None)
                        qprov = qprov2
                    g = _int_gcd_all(qrow, qrhs)
                    if g > 1:
                        qrow = {c: x // g for c, x in qrow.items()}
                        qrhs //= g
                        if qprov is not None:
                            qprov = {t: x / g for t, x in qprov.items()}
                    self.pivots[q] = (qrow, qrhs, qprov)
        else:
            for p in sorted(self.pivots, reverse=True):
                row, rhs, prov = self.pivots[p]
                for q, (qrow, qrhs, qprov) in self.pivots.items():
                    if q >= p:
                        continue
                    coef = qrow.get(p)
                    if coef:
                        _spadd_scaled(qrow, row, coef)
                        self.pivots[q] = (qrow, qrhs - coef * rhs, qprov)
                        if qprov is not None:
                            _spadd_scaled(qprov, prov, coef)
        self._reduced = True

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def consistent(self):
        return self.inconsistency is None

    def particular(self):
        """Canonical solution with all free variables zero, or None."""
        if not self.consistent:
            return None
        self._finalize()
        x = [self.field.zero] * self.ncols
        if self._int_mode:
            for p, (prow, rhs, _) in self.pivots.items():
                x[p] = Fraction(rhs, prow[p])
        else:
            for p, (_, rhs, _) in self.pivots.items():
                x[p] = rhs
        return tuple(x)

    def kernel(self) -> Subspace:
        f = self.field
        self._finalize()
        free = [c for c in range(self.ncols) if c not in self.pivots]
        vecs = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for p, (prow, _, _) in self.pivots.items():
                coef = prow.get(fc)
                if coef:
                    v[p] = -Fraction(coef, prow[p]) if self._int_mode else -coef
            vecs.append(tuple(v))
        return Subspace.from_vectors(f, self.ncols, vecs)

    def witness(self):
        """The tracked inconsistency combination, or None if consistent."""
        if self.inconsistency is None:
            return None
        prov, rhs = self.inconsistency
        return prov, rhs

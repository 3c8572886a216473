"""Finite metagroups: unital quasigroup tables whose associator is central.

A metagroup here is a finite Cayley table with two-sided unit and unique
left/right division, together with a designated subgroup ``psi`` that is
central and fully associative, such that for every triple (a, b, c) the
unique t with t * (a(bc)) = (ab)c lies in ``psi``.  Groups are exactly the
case psi = {e}; Cayley-Dickson doubling produces the octonion and sedenion
basis tables where the associator is genuinely nontrivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct


class MalformedTable(Exception):
    """Table has the wrong shape or entries outside 0..n-1."""


class AxiomViolation(Exception):
    """A metagroup axiom failed.  Carries the axiom name and a witness."""

    def __init__(self, axiom, witness, message):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class NotAssociative(AxiomViolation):
    def __init__(self, witness):
        super().__init__(
            "associativity",
            witness,
            "table is not associative at triple %r" % (witness,),
        )


@dataclass(frozen=True)
class MetagroupTable:
    """Validated metagroup data.  Construct through verify_metagroup."""

    n: int
    unit: int
    product: tuple
    psi: tuple
    left_div: tuple
    right_div: tuple
    names: tuple = dc_field(default=(), compare=False)

    def mul(self, a, b):
        return self.product[a][b]

    def ldiv(self, a, b):
        """The unique x with a * x = b."""
        return self.left_div[a][b]

    def rdiv(self, a, b):
        """The unique x with x * b = a."""
        return self.right_div[a][b]

    def associator(self, a, b, c):
        """The unique t with t * (a(bc)) = (ab)c; always lies in psi."""
        p = self.product
        return self.right_div[p[p[a][b]][c]][p[a][p[b][c]]]

    def name_of(self, a):
        return self.names[a] if self.names else str(a)

    def __repr__(self):
        return "MetagroupTable(n=%d, unit=%d, psi=%s)" % (self.n, self.unit, list(self.psi))


def _division_tables(table, n):
    left = [[None] * n for _ in range(n)]
    right = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            c = table[a][b]
            left[a][c] = b
            right[c][b] = a
    return tuple(tuple(r) for r in left), tuple(tuple(r) for r in right)


def verify_metagroup(table, unit, psi, names=()):
    """Validate a raw product table as a metagroup.

    Checks, in order: shape and entry range, the Latin-square property,
    the unit, that psi contains the unit and is closed, central and fully
    associative, and that every associator value lands in psi.  Raises
    MalformedTable or AxiomViolation naming the first failure; on success
    returns a MetagroupTable with division tables filled in.
    """
    n = len(table)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise MalformedTable("row %d has length %d, expected %d" % (i, len(row), n))
        for j, x in enumerate(row):
            if not isinstance(x, int) or not (0 <= x < n):
                raise MalformedTable("entry (%d, %d) = %r out of range" % (i, j, x))
    table = tuple(tuple(r) for r in table)
    full = frozenset(range(n))
    for i in range(n):
        if frozenset(table[i]) != full:
            raise AxiomViolation("row-permutation", i, "row %d is not a permutation" % i)
    for j in range(n):
        col = frozenset(table[i][j] for i in range(n))
        if col != full:
            raise AxiomViolation("column-permutation", j, "column %d is not a permutation" % j)
    if not isinstance(unit, int) or not (0 <= unit < n):
        raise MalformedTable("unit %r out of range" % (unit,))
    for a in range(n):
        if table[unit][a] != a or table[a][unit] != a:
            raise AxiomViolation("unit", a, "element %d is not fixed by the unit" % a)
    psi = tuple(sorted(set(psi)))
    for s in psi:
        if not (0 <= s < n):
            raise MalformedTable("psi member %r out of range" % (s,))
    if unit not in psi:
        raise AxiomViolation("psi-unit", unit, "psi does not contain the unit")
    for s, t in iproduct(psi, psi):
        if table[s][t] not in psi:
            raise AxiomViolation("psi-closed", (s, t), "psi is not closed at (%d, %d)" % (s, t))
    for s in psi:
        for a in range(n):
            if table[s][a] != table[a][s]:
                raise AxiomViolation("psi-central", (s, a), "psi element %d does not commute with %d" % (s, a))
        for a in range(n):
            for b in range(n):
                sab = table[s][table[a][b]]
                if table[table[s][a]][b] != sab or table[a][table[s][b]] != sab:
                    raise AxiomViolation(
                        "psi-associative",
                        (s, a, b),
                        "psi element %d does not associate at (%d, %d)" % (s, a, b),
                    )
    left_div, right_div = _division_tables(table, n)
    m = MetagroupTable(n, unit, table, psi, left_div, right_div, tuple(names))
    psiset = set(psi)
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                t = right_div[table[ab][c]][table[a][table[b][c]]]
                if t not in psiset:
                    raise AxiomViolation(
                        "associator",
                        (a, b, c),
                        "associator of (%d, %d, %d) = %d is outside psi" % (a, b, c, t),
                    )
    return m


def associator(m: MetagroupTable, a, b, c):
    return m.associator(a, b, c)


def center_and_psi(m: MetagroupTable):
    """All elements that commute with everything and associate in every slot.

    This is the largest subset usable as psi; any user-supplied psi must be
    a subgroup of it.
    """
    out = []
    rng = range(m.n)
    p = m.product
    for c in rng:
        if any(p[c][a] != p[a][c] for a in rng):
            continue
        ok = True
        for a in rng:
            for b in rng:
                ab = p[a][b]
                if p[c][ab] != p[p[c][a]][b] or p[p[a][c]][b] != p[a][p[c][b]] or p[ab][c] != p[a][p[b][c]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(c)
    return tuple(out)


def from_group(table, psi=None, names=()):
    """Wrap an associative quasigroup table with unit as a metagroup.

    psi defaults to {unit}; any central subgroup may be requested instead.
    Raises NotAssociative with a witness triple if associativity fails.
    """
    n = len(table)
    unit = None
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            unit = e
            break
    if unit is None:
        raise AxiomViolation("unit", None, "table has no two-sided unit")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise NotAssociative((a, b, c))
    return verify_metagroup(table, unit, psi if psi is not None else (unit,), names)


# ---------------------------------------------------------------------------
# constructions


def cyclic_group(n: int) -> MetagroupTable:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return from_group(table, names=tuple("g%d" % i if i else "e" for i in range(n)))


def direct_product(m1: MetagroupTable, m2: MetagroupTable) -> MetagroupTable:
    """Direct product table; psi is the product of the two psi subgroups."""
    n1, n2 = m1.n, m2.n
    idx = lambda a, b: a * n2 + b
    table = [[0] * (n1 * n2) for _ in range(n1 * n2)]
    for a1, a2 in iproduct(range(n1), range(n2)):
        for b1, b2 in iproduct(range(n1), range(n2)):
            table[idx(a1, a2)][idx(b1, b2)] = idx(m1.mul(a1, b1), m2.mul(a2, b2))
    psi = tuple(idx(s1, s2) for s1 in m1.psi for s2 in m2.psi)
    names = tuple(
        "(%s,%s)" % (m1.name_of(a), m2.name_of(b)) for a in range(n1) for b in range(n2)
    )
    return verify_metagroup(table, idx(m1.unit, m2.unit), psi, names)


def klein_four() -> MetagroupTable:
    return direct_product(cyclic_group(2), cyclic_group(2))


def signed_pair() -> MetagroupTable:
    """The two-element group {1, -1} with psi the whole group.

    The distinguished involution at index 1 plays the role of -1, which is
    the seed of the Cayley-Dickson doubling chain.
    """
    return verify_metagroup([[0, 1], [1, 0]], 0, (0, 1), ("1", "-1"))


def _signed_name(x):
    word = x >> 1
    base = "1" if word == 0 else "e%d" % word
    return ("-" + base) if (x & 1) else base


def cayley_dickson_double(m: MetagroupTable, rho: int, twists=(False, False, False)) -> MetagroupTable:
    """Double a metagroup along a central involution rho (its "-1").

    New elements are pairs (a, s) indexed as s*n + a.  On basis elements the
    product is (a,0)(b,0) = (ab, 0), (a,0)(b,1) = (ba, 1),
    (a,1)(b,0) = (a b*, 1), (a,1)(b,1) = (rho b*a, 0), where conjugation
    fixes the unit and rho and maps every other g to rho*g.  Each entry of
    ``twists`` inserts an extra factor of rho into the corresponding mixed
    block, giving the sign-variant doublings; the default reproduces the
    standard complex/quaternion/octonion sign tables.  The doubled table is
    re-verified before it is returned, so an inconsistent variant fails
    loudly with a witness.
    """
    if rho == m.unit or rho not in m.psi or m.mul(rho, rho) != m.unit:
        raise AxiomViolation(
            "doubling-involution",
            rho,
            "rho must be a non-unit central involution inside psi",
        )
    n = m.n
    p = m.product

    def star(g):
        return g if g in (m.unit, rho) else p[rho][g]

    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for a in range(n):
        for b in range(n):
            table[a][b] = p[a][b]
            v = p[b][a]
            if twists[0]:
                v = p[rho][v]
            table[a][n + b] = n + v
            v = p[a][star(b)]
            if twists[1]:
                v = p[rho][v]
            table[n + a][b] = n + v
            v = p[rho][p[star(b)][a]]
            if twists[2]:
                v = p[rho][v]
            table[n + a][n + b] = v
    names = tuple(m.names) + tuple("%s*w" % m.name_of(a) for a in range(n)) if m.names else ()
    doubled = verify_metagroup(table, m.unit, (m.unit, rho), names)
    return doubled


def doubling_chain(levels: int) -> MetagroupTable:
    """Iterated doubling of the signed pair.

    One level gives the complex-unit table (order 4), two the quaternion
    units (order 8), three the octonion units (order 16), four the sedenion
    units (order 32).  Index bit 0 is the sign, the remaining bits name the
    imaginary unit, so the element at index x is +-e_{x >> 1}.
    """
    m = signed_pair()
    for _ in range(levels):
        m = cayley_dickson_double(m, 1)
    names = tuple(_signed_name(x) for x in range(m.n))
    return MetagroupTable(m.n, m.unit, m.product, m.psi, m.left_div, m.right_div, names)


def octonion_units() -> MetagroupTable:
    return doubling_chain(3)


def sedenion_units() -> MetagroupTable:
    return doubling_chain(4)

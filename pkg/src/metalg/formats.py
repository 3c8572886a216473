"""Input documents, report payloads, and offline re-verification.

The input grammar is line-oriented UTF-8 text: top-level ``key: value``
pairs, ``#`` comments, and one algebra source section, either::

    [metagroup]              [metagroup]            [algebra]
    n: 2                     doubling: 3            dim: 2
    unit: 0                  (seed {1,-1})          labels: one x
    psi: 0                                          unit: 1 0
    names: e a                                      structure:
    product:                                          0 0 -> 0:1
      0 1                                             0 1 -> 1:1
      1 0                                             1 0 -> 1:1

plus an optional ``[embedding]`` section mapping psi indices to scalars
(default: unit -> 1, and for a two-element psi the involution -> -1).
Top-level keys: ``field`` (``q`` or ``gf:p``) and optional ``analyses``.
A ``file:`` key inside [metagroup] includes another document's metagroup
section (path relative to the including document).

Reports are JSON with a deterministic ``results`` section (two runs on the
same input are byte-identical there) and re-verify offline: certificates
are re-checked by identity evaluation only, never by re-running a solver.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algebra import (
    ActionLawViolation,
    GradedAlgebra,
    PsiEmbedding,
    build_metagroup_algebra,
    default_embedding,
    ideal_bimodule_over_quotient,
    quotient_algebra,
    structure_algebra,
    sub_bimodule,
    quotient_bimodule,
)
from .cohomology import (
    CohomologyResult,
    delta1,
    delta2,
    get_enveloping,
    get_kernel_mu,
    get_regular_bimodule,
    h1,
    h2,
    idempotent_equations,
    inner_cochain,
    pack_cochain1,
    cochain_space1,
    cochain_space2,
    unpack_cochain1,
    unpack_cochain2,
    separating_idempotent,
    splitting_homomorphism,
    verify_idempotent_identities,
    verify_infeasibility_witness,
)
from .decomposition import (
    NotInner,
    Obstructed,
    conjugate_complements,
    nilpotent_inverse,
    radical,
    wedderburn_decompose,
)
from .fields import parse_field
from .linalg import Subspace, is_zero_vec, mat_vec, rank, unit_vec, vadd, vscale, vsub, vzero
from .metagroup import (
    AxiomViolation,
    MalformedTable,
    MetagroupTable,
    center_and_psi,
    doubling_chain,
    verify_metagroup,
)


class ParseError(Exception):
    def __init__(self, line_no, message):
        super().__init__("line %d: %s" % (line_no, message))
        self.line_no = line_no


class ValidationError(Exception):
    pass


ANALYSES = ("verify", "idempotent", "cohomology", "decompose", "conjugate")
MODULE_NAMES = ("A", "Ae", "kermu", "jj2")


@dataclass
class WorkbenchInput:
    """Parsed input document: exactly one algebra source plus options."""

    field_spec: str
    analyses: tuple
    metagroup_section: dict | None
    algebra_section: dict | None
    embedding: dict | None
    document: str
    base_dir: Path | None = None


# ---------------------------------------------------------------------------
# parsing


def _split_section_lines(text):
    section = None
    pending_key = None
    top = {}
    sections = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.startswith((" ", "\t")):
            if pending_key is None:
                raise ParseError(ln, "indented line without a block key")
            target = sections[section] if section else top
            target[pending_key].append((ln, line.strip()))
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section in sections:
                raise ParseError(ln, "duplicate section [%s]" % section)
            sections[section] = {}
            pending_key = None
            continue
        if ":" not in line:
            raise ParseError(ln, "expected 'key: value'")
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        target = sections[section] if section else top
        if key in target:
            raise ParseError(ln, "duplicate key %r" % key)
        if value:
            target[key] = (ln, value)
            pending_key = None
        else:
            target[key] = []
            pending_key = key
    return top, sections


def _ints(text, ln, what):
    out = []
    for tok in text.split():
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(ln, "%s: %r is not an integer" % (what, tok)) from None
    return out


def parse_input_document(text, base_dir=None) -> WorkbenchInput:
    top, sections = _split_section_lines(text)
    unknown = set(sections) - {"metagroup", "algebra", "embedding"}
    if unknown:
        raise ParseError(0, "unknown sections: %s" % ", ".join(sorted(unknown)))
    if ("metagroup" in sections) == ("algebra" in sections):
        raise ParseError(0, "exactly one of [metagroup] or [algebra] is required")
    field_spec = top.pop("field", None)
    if field_spec is None:
        raise ParseError(0, "missing top-level 'field'")
    field_spec = field_spec[1]
    analyses = ()
    if "analyses" in top:
        ln, value = top.pop("analyses")
        analyses = tuple(value.split())
        for name in analyses:
            if name not in ANALYSES:
                raise ParseError(ln, "unknown analysis %r" % name)
        if not analyses:
            raise ParseError(ln, "analyses list is empty")
    if top:
        raise ParseError(0, "unknown top-level keys: %s" % ", ".join(sorted(top)))
    emb = None
    if "embedding" in sections:
        emb = {}
        for key, val in sections["embedding"].items():
            if isinstance(val, list):
                raise ParseError(val[0][0] if val else 0, "embedding entries are 'index: scalar'")
            ln, scalar = val
            try:
                idx = int(key)
            except ValueError:
                raise ParseError(ln, "embedding key %r is not an index" % key) from None
            emb[idx] = scalar
    return WorkbenchInput(
        field_spec=field_spec,
        analyses=analyses,
        metagroup_section=sections.get("metagroup"),
        algebra_section=sections.get("algebra"),
        embedding=emb,
        document=text,
        base_dir=base_dir,
    )


def _build_metagroup(section, base_dir) -> MetagroupTable:
    keys = set(section)
    if "doubling" in keys:
        ln, val = section["doubling"]
        levels = _ints(val, ln, "doubling")[0]
        if levels < 0 or levels > 5:
            raise ValidationError("doubling levels must be between 0 and 5")
        return doubling_chain(levels)
    if "file" in keys:
        ln, rel = section["file"]
        path = (base_dir / rel) if base_dir else Path(rel)
        try:
            sub = parse_input_document(path.read_text(), base_dir=path.parent)
        except OSError as exc:
            raise ValidationError("cannot read metagroup file %s: %s" % (path, exc)) from exc
        if sub.metagroup_section is None:
            raise ValidationError("included file %s has no [metagroup] section" % path)
        return _build_metagroup(sub.metagroup_section, path.parent)
    for need in ("n", "unit", "psi", "product"):
        if need not in keys:
            raise ValidationError("[metagroup] missing %r" % need)
    ln, nval = section["n"]
    n = _ints(nval, ln, "n")[0]
    ln, uval = section["unit"]
    unit = _ints(uval, ln, "unit")[0]
    ln, pval = section["psi"]
    psi = _ints(pval, ln, "psi")
    prod_lines = section["product"]
    if not isinstance(prod_lines, list):
        raise ValidationError("product must be an indented block of rows")
    if len(prod_lines) != n:
        raise ValidationError("product has %d rows, expected %d" % (len(prod_lines), n))
    table = []
    for ln2, row in prod_lines:
        vals = _ints(row, ln2, "product row")
        if len(vals) != n:
            raise ParseError(ln2, "product row has %d entries, expected %d" % (len(vals), n))
        table.append(vals)
    names = ()
    if "names" in keys:
        ln, nm = section["names"]
        names = tuple(nm.split())
        if len(names) != n:
            raise ValidationError("names lists %d labels for %d elements" % (len(names), n))
    return verify_metagroup(table, unit, psi, names)


def _build_raw_algebra(section, field) -> GradedAlgebra:
    for need in ("dim", "unit", "structure"):
        if need not in section:
            raise ValidationError("[algebra] missing %r" % need)
    ln, dval = section["dim"]
    dim = _ints(dval, ln, "dim")[0]
    ln, uval = section["unit"]
    unit_toks = uval.split()
    if len(unit_toks) != dim:
        raise ValidationError("unit vector has %d entries, expected %d" % (len(unit_toks), dim))
    try:
        unit = tuple(field.parse(t) for t in unit_toks)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError("bad unit coefficient: %s" % exc) from exc
    labels = None
    if "labels" in section:
        ln, lv = section["labels"]
        labels = tuple(lv.split())
        if len(labels) != dim:
            raise ValidationError("labels list %d entries for dim %d" % (len(labels), dim))
    structure = [[() for _ in range(dim)] for _ in range(dim)]
    lines = section["structure"]
    if not isinstance(lines, list):
        raise ValidationError("structure must be an indented block")
    for ln2, line in lines:
        head, _, terms = line.partition("->")
        ij = _ints(head, ln2, "structure pair")
        if len(ij) != 2 or not all(0 <= x < dim for x in ij):
            raise ParseError(ln2, "structure line must start 'i j ->'")
        parsed = []
        for tok in terms.split():
            k, _, c = tok.partition(":")
            try:
                kk = int(k)
                cc = field.parse(c)
            except (ValueError, ZeroDivisionError):
                raise ParseError(ln2, "bad structure term %r (want k:coeff)" % tok) from None
            if not (0 <= kk < dim):
                raise ParseError(ln2, "structure term index %d out of range" % kk)
            parsed.append((kk, cc))
        if structure[ij[0]][ij[1]]:
            raise ParseError(ln2, "duplicate structure entry for pair %d %d" % tuple(ij))
        structure[ij[0]][ij[1]] = tuple(parsed)
    try:
        return structure_algebra(field, structure, unit, labels=labels, name="input")
    except ActionLawViolation as exc:
        raise ValidationError("structure constants rejected: %s" % exc) from exc


@dataclass
class RealizedInput:
    """Everything built from a parsed document."""

    spec: WorkbenchInput
    field: object
    metagroup: MetagroupTable | None
    embedding: PsiEmbedding | None
    algebra: GradedAlgebra


def realize_input(spec: WorkbenchInput) -> RealizedInput:
    try:
        field = parse_field(spec.field_spec)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    if spec.metagroup_section is not None:
        mg = _build_metagroup(spec.metagroup_section, spec.base_dir)
        if spec.embedding is not None:
            try:
                values = {idx: field.parse(s) for idx, s in spec.embedding.items()}
            except (ValueError, ZeroDivisionError) as exc:
                raise ValidationError("bad embedding scalar: %s" % exc) from exc
            if mg.unit not in values:
                values[mg.unit] = field.one
            emb = PsiEmbedding.of(values)
        else:
            emb = default_embedding(mg, field)
        alg = build_metagroup_algebra(mg, field, emb, name="input")
        return RealizedInput(spec, field, mg, emb, alg)
    alg = _build_raw_algebra(spec.algebra_section, field)
    return RealizedInput(spec, field, None, None, alg)


# ---------------------------------------------------------------------------
# serialization helpers


def _s(field, x):
    return field.fmt(x)


def _vec(field, v):
    return [field.fmt(x) for x in v]


def _mat(field, m):
    return [[field.fmt(x) for x in row] for row in m]


def _parse_vec(field, data):
    return tuple(field.parse(s) for s in data)


def _parse_mat(field, data):
    return tuple(tuple(field.parse(s) for s in row) for row in data)


def _tag_str(tag):
    return ":".join(str(t) for t in tag)


def _tag_parse(s):
    parts = s.split(":")
    return (parts[0],) + tuple(int(p) for p in parts[1:])


# ---------------------------------------------------------------------------
# analyses


def module_battery(alg: GradedAlgebra, names):
    """The coefficient modules requested by name."""
    out = {}
    for name in names:
        if name == "A":
            out[name] = get_regular_bimodule(alg)
        elif name == "Ae":
            out[name] = get_enveloping(alg).as_bimodule()
        elif name == "kermu":
            out[name] = get_kernel_mu(alg)[1]
        elif name == "jj2":
            rad = radical(alg)
            if rad.subspace.dim == 0:
                continue
            reg = get_regular_bimodule(alg)
            jbim = sub_bimodule(reg, rad.subspace, name="J")
            from .algebra import subspace_product

            j2 = subspace_product(alg, rad.subspace, rad.subspace)
            j2_in_j = Subspace.from_vectors(
                alg.field, rad.subspace.dim,
                [rad.subspace.coords(b) for b in j2.basis])
            out[name] = quotient_bimodule(jbim, j2_in_j, name="J/J2")
        else:
            raise ValidationError("unknown coefficient module %r" % name)
    return out


def _cohomology_entry(field, res: CohomologyResult):
    return {
        "degree": res.degree,
        "graded": res.graded,
        "dim_z": res.dim_z,
        "dim_b": res.dim_b,
        "dim_h": res.dim_h,
        "representatives": [_vec(field, r) for r in res.representatives],
        "functionals": [_vec(field, r) for r in res.functionals],
    }


def run_analysis(real: RealizedInput, analysis: str, modules=("A", "Ae", "kermu")):
    """One analysis -> (payload dict, exit code)."""
    alg = real.algebra
    field = real.field
    if analysis == "verify":
        if real.metagroup is None:
            raise ValidationError("'verify' needs a [metagroup] source")
        mg = real.metagroup
        witness = None
        for a in range(mg.n):
            for b in range(mg.n):
                for c in range(mg.n):
                    t = mg.associator(a, b, c)
                    if t != mg.unit:
                        witness = [a, b, c, t]
                        break
                if witness:
                    break
            if witness:
                break
        return {
            "status": "ok",
            "n": mg.n,
            "unit": mg.unit,
            "psi": list(mg.psi),
            "center": list(center_and_psi(mg)),
            "algebra_dim": alg.dim,
            "nontrivial_associator": witness is not None,
            "associator_witness": witness,
        }, 0
    if analysis == "idempotent":
        outcome = separating_idempotent(alg)
        split = splitting_homomorphism(alg)
        if outcome.separable != split.separable:
            raise ActionLawViolation(
                "equivalence", None,
                "idempotent and splitting solvers disagree on separability")
        if outcome.separable:
            return {
                "separable": True,
                "b": _vec(field, outcome.b),
                "kernel_dim": outcome.kernel_dim,
                "families": [[name, count] for name, count in outcome.families],
                "splitting_exists": True,
            }, 0
        return {
            "separable": False,
            "witness": [[_tag_str(tag), _s(field, c)] for tag, c in outcome.witness],
            "value": _s(field, outcome.value),
            "splitting_exists": False,
        }, 3
    if analysis == "cohomology":
        mods = module_battery(alg, modules)
        payload = {"modules": {}}
        for name in sorted(mods):
            m = mods[name]
            payload["modules"][name] = {
                "dim": m.dim,
                "h1": _cohomology_entry(field, h1(alg, m)),
                "h2": _cohomology_entry(field, h2(alg, m)),
            }
        return payload, 0
    if analysis == "decompose":
        try:
            res = wedderburn_decompose(alg)
        except Obstructed as exc:
            return {
                "status": "obstructed",
                "level": exc.level,
                "phi": [[_vec(field, v) for v in row] for row in exc.phi],
                "levels_done": len(exc.partial),
            }, 3
        return {
            "status": "ok",
            "radical": {
                "dim": res.radical.subspace.dim,
                "index": res.radical.index,
                "basis": _mat(field, res.radical.subspace.basis),
                "left_chain": list(res.radical.left_chain_dims),
                "right_chain": list(res.radical.right_chain_dims),
                "graded": res.radical.graded,
            },
            "complement_basis": _mat(field, res.complement.basis),
            "splitting": _mat(field, res.splitting),
            "levels": [
                {
                    "algebra_dim": rec.algebra_dim,
                    "ideal_dim": rec.ideal_dim,
                    "phi": [[_vec(field, v) for v in row] for row in rec.phi],
                    "h": _mat(field, rec.h),
                }
                for rec in res.levels
            ],
        }, 0
    if analysis == "conjugate":
        res = wedderburn_decompose(alg)
        if res.radical.subspace.dim == 0:
            return {"status": "trivial-radical"}, 0
        b = res.complement
        v0 = res.radical.subspace.basis[0]
        rinv0, _ = nilpotent_inverse(alg, v0)
        omv = vsub(alg.unit, v0)
        c_vecs = [alg.mul(rinv0, alg.mul(bb, omv)) for bb in b.basis]
        c = Subspace.from_vectors(field, alg.dim, c_vecs)
        try:
            conj = conjugate_complements(alg, b, c, res.radical)
        except NotInner as exc:
            return {
                "status": "not-inner",
                "w": _mat(field, exc.w_matrix),
            }, 3
        return {
            "status": "ok",
            "v0": _vec(field, v0),
            "b_basis": _mat(field, b.basis),
            "c_basis": _mat(field, c.basis),
            "v": _vec(field, conj.v),
            "right_inverse": _vec(field, conj.right_inverse),
            "left_inverse": _vec(field, conj.left_inverse),
        }, 0
    raise ValidationError("unknown analysis %r" % analysis)


# ---------------------------------------------------------------------------
# reports


def document_digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def build_report(real: RealizedInput, command: str, results: dict, elapsed_ms: int) -> dict:
    spec = real.spec
    return {
        "format": "metalg-report/1",
        "tool": {"name": "metalg", "version": __version__},
        "input": {
            "digest": document_digest(spec.document),
            "document": spec.document,
            "field": spec.field_spec,
            "analyses": list(spec.analyses) if spec.analyses else [command],
        },
        "results": results,
        "meta": {"command": command, "elapsed_ms": elapsed_ms},
    }


def results_payload_bytes(report: dict) -> bytes:
    """The deterministic part of a report, canonically serialized."""
    core = {"input": {k: report["input"][k] for k in ("digest", "field")},
            "results": report["results"]}
    return json.dumps(core, sort_keys=True, separators=(",", ":")).encode()


def emit_report(report: dict, format: str) -> str:
    if format == "structured":
        return json.dumps(report, sort_keys=True, indent=1) + "\n"
    if format != "text":
        raise ValidationError("unknown report format %r" % format)
    lines = []
    lines.append("metalg report (%s), field %s" % (report["meta"]["command"], report["input"]["field"]))
    lines.append("input digest: %s" % report["input"]["digest"])
    for name in sorted(report["results"]):
        payload = report["results"][name]
        lines.append("")
        lines.append("== %s ==" % name)
        lines.extend(_render_text(name, payload))
    return "\n".join(lines) + "\n"


def _render_text(name, payload):
    if name == "verify":
        if payload.get("status") != "ok":
            return ["FAILED: %s (axiom %s, witness %s)" % (
                payload.get("message"), payload.get("axiom"), payload.get("witness"))]
        out = ["table of order %d passes all axioms" % payload["n"],
               "psi = %s, center = %s" % (payload["psi"], payload["center"]),
               "algebra dimension %d" % payload["algebra_dim"]]
        if payload["nontrivial_associator"]:
            out.append("nontrivial associator, witness triple %s" % payload["associator_witness"])
        else:
            out.append("associator identically trivial (associative table)")
        return out
    if name == "idempotent":
        if payload["separable"]:
            return ["separable: certificate found (solution space dim %d)" % payload["kernel_dim"],
                    "b = %s" % payload["b"],
                    "identity families re-verified: %s" % payload["families"]]
        return ["NOT separable: certified by an inconsistent combination of %d identities"
                % len(payload["witness"])]
    if name == "cohomology":
        out = []
        for mod in sorted(payload["modules"]):
            entry = payload["modules"][mod]
            out.append("module %s (dim %d):" % (mod, entry["dim"]))
            for deg in ("h1", "h2"):
                e = entry[deg]
                out.append("  %s: dim Z = %d, dim B = %d, dim H = %d%s" % (
                    deg.upper(), e["dim_z"], e["dim_b"], e["dim_h"],
                    " (graded cochains)" if e["graded"] else ""))
        return out
    if name == "decompose":
        if payload.get("status") == "obstructed":
            return ["OBSTRUCTED at level %d: no coboundary solution" % payload["level"]]
        rad = payload["radical"]
        return ["radical dim %d, nilpotency index %d, chain %s" % (
                    rad["dim"], rad["index"], rad["left_chain"]),
                "complement of dim %d found; splitting verified multiplicative" %
                len(payload["complement_basis"]),
                "induction levels: %d" % len(payload["levels"])]
    if name == "conjugate":
        if payload.get("status") == "trivial-radical":
            return ["radical is zero; complements coincide"]
        if payload.get("status") == "not-inner":
            return ["NOT conjugate by this route: difference derivation is not inner"]
        return ["conjugating element v = %s" % payload["v"],
                "(1-v) inverses verified on both sides"]
    return [json.dumps(payload, sort_keys=True)]


# ---------------------------------------------------------------------------
# offline re-verification


class ReverifyFailure(Exception):
    pass


def _check(cond, message):
    if not cond:
        raise ReverifyFailure(message)


def reverify_report(report: dict):
    """Re-check every certificate in a report from the report's own data.

    Only identity evaluations run here: no linear solver output is trusted
    or recomputed.  Raises ReverifyFailure naming the first failing check.
    """
    _check(report.get("format") == "metalg-report/1", "unknown report format")
    doc = report["input"]["document"]
    _check(document_digest(doc) == report["input"]["digest"], "input digest mismatch")
    spec = parse_input_document(doc)
    _check(spec.field_spec == report["input"]["field"], "field spec mismatch")
    real = realize_input(spec)
    alg = real.algebra
    field = real.field
    for name, payload in report["results"].items():
        if name == "verify":
            _check(payload.get("status") == "ok", "verify payload recorded a failure")
            _check(real.metagroup is not None, "verify result without metagroup input")
            _check(payload["n"] == real.metagroup.n, "order mismatch")
            _check(tuple(payload["psi"]) == real.metagroup.psi, "psi mismatch")
            _check(tuple(payload["center"]) == center_and_psi(real.metagroup), "center mismatch")
            w = payload.get("associator_witness")
            if payload["nontrivial_associator"]:
                _check(w is not None, "missing associator witness")
                a, b, c, t = w
                _check(real.metagroup.associator(a, b, c) == t != real.metagroup.unit,
                       "associator witness fails")
        elif name == "idempotent":
            env = get_enveloping(alg)
            if payload["separable"]:
                b = _parse_vec(field, payload["b"])
                verify_idempotent_identities(alg, env, b)
            else:
                witness = tuple(
                    (_tag_parse(t), field.parse(c)) for t, c in payload["witness"])
                value = field.parse(payload["value"])
                _check(
                    verify_infeasibility_witness(
                        idempotent_equations(alg, env), env.dim, witness, value, field),
                    "infeasibility witness fails recombination")
        elif name == "cohomology":
            for mod_name, entry in payload["modules"].items():
                m = module_battery(alg, (mod_name,))[mod_name]
                _check(entry["dim"] == m.dim, "module dimension mismatch")
                for deg, res in (("h1", entry["h1"]), ("h2", entry["h2"])):
                    _reverify_cohomology(alg, m, deg, res, field)
        elif name == "decompose":
            _reverify_decompose(alg, payload, field)
        elif name == "conjugate":
            _reverify_conjugate(alg, payload, field)
        else:
            raise ReverifyFailure("unknown result section %r" % name)
    return True


def _reverify_cohomology(alg, m, deg, res, field):
    _check(res["dim_h"] == res["dim_z"] - res["dim_b"], "dimension bookkeeping broken")
    _check(len(res["representatives"]) == res["dim_h"], "representative count mismatch")
    _check(len(res["functionals"]) == res["dim_h"], "functional count mismatch")
    space = cochain_space1(alg, m) if deg == "h1" else cochain_space2(alg, m)
    _check(res["graded"] == space.graded, "graded flag mismatch")
    reps = [_parse_vec(field, r) for r in res["representatives"]]
    funcs = [_parse_vec(field, r) for r in res["functionals"]]
    for vec in reps + funcs:
        _check(len(vec) == space.dim, "packed vector length mismatch")
    # representatives are cocycles
    from .cohomology import delta1_sparse, delta2_sparse_nonzero

    for vec in reps:
        if deg == "h1":
            h = {}
            for (j, w), c in zip(space.slots, vec):
                if c:
                    h.setdefault(j, {})[w] = c
            _check(not delta1_sparse(alg, m, h), "representative is not a 1-cocycle")
        else:
            phi = {}
            for (pair, w), c in zip(space.slots, vec):
                if c:
                    phi.setdefault(pair, {})[w] = c
            _check(delta2_sparse_nonzero(alg, m, phi) is None,
                   "representative is not a 2-cocycle")
    # functionals kill every coboundary generator
    if deg == "h1":
        from .cohomology import _inner_generator_indices

        gens = []
        for u in _inner_generator_indices(alg, m, space):
            gens.append(pack_cochain1(space, inner_cochain(alg, m, u)))
    else:
        from .cohomology import coboundary2_generators

        gens = coboundary2_generators(alg, m, space)
    for lam in funcs:
        for g in gens:
            acc = field.zero
            for x, y in zip(lam, g):
                acc = acc + x * y
            _check(not acc, "functional does not kill a coboundary generator")
    # pairing is the identity-sized nonsingular certificate
    if reps:
        pairing = []
        for lam in funcs:
            row = []
            for r in reps:
                acc = field.zero
                for x, y in zip(lam, r):
                    acc = acc + x * y
                row.append(acc)
            pairing.append(tuple(row))
        _check(rank(field, tuple(pairing)) == len(reps),
               "functional/representative pairing is singular")


def _reverify_decompose(alg, payload, field):
    if payload.get("status") == "obstructed":
        return
    _check(payload.get("status") == "ok", "unknown decompose status")
    rad = payload["radical"]
    jbasis = _parse_mat(field, rad["basis"])
    j = Subspace.from_vectors(field, alg.dim, jbasis)
    _check(tuple(tuple(r) for r in j.basis) == jbasis, "radical basis not canonical echelon")
    _check(j.dim == rad["dim"], "radical dimension mismatch")
    from .algebra import verify_two_sided_ideal, subspace_product

    verify_two_sided_ideal(alg, j)
    chain = [j]
    for _ in range(rad["index"]):
        chain.append(subspace_product(alg, j, chain[-1]))
    _check(chain[rad["index"] - 1].dim == 0, "left chain does not vanish at the stated index")
    if rad["index"] > 1:
        _check(chain[rad["index"] - 2].dim > 0, "stated nilpotency index is not minimal")
    dbasis = _parse_mat(field, payload["complement_basis"])
    d = Subspace.from_vectors(field, alg.dim, dbasis)
    _check(tuple(tuple(r) for r in d.basis) == dbasis, "complement basis not canonical")
    _check(d.dim + j.dim == alg.dim and d.add(j).dim == alg.dim,
           "complement + radical is not a direct sum")
    for u in d.basis:
        for v in d.basis:
            _check(d.contains(alg.mul(u, v)), "complement is not closed under the product")
    p = _parse_mat(field, payload["splitting"])
    qd = quotient_algebra(alg, j)
    quot = qd.algebra
    for q1 in range(quot.dim):
        e1 = unit_vec(field, quot.dim, q1)
        _check(qd.project(mat_vec(p, e1)) == e1, "splitting is not a section")
        for q2 in range(quot.dim):
            e2 = unit_vec(field, quot.dim, q2)
            _check(mat_vec(p, quot.mul(e1, e2)) == alg.mul(mat_vec(p, e1), mat_vec(p, e2)),
                   "splitting is not an algebra map")
    _check(mat_vec(p, qd.project(alg.unit)) == alg.unit, "splitting does not fix the unit")
    cols = [tuple(p[r][q] for r in range(alg.dim)) for q in range(quot.dim)]
    _check(Subspace.from_vectors(field, alg.dim, cols) == d,
           "splitting image differs from the stated complement")


def _reverify_conjugate(alg, payload, field):
    status = payload.get("status")
    if status in ("trivial-radical", "not-inner"):
        return
    _check(status == "ok", "unknown conjugate status")
    b = Subspace.from_vectors(field, alg.dim, _parse_mat(field, payload["b_basis"]))
    c = Subspace.from_vectors(field, alg.dim, _parse_mat(field, payload["c_basis"]))
    v = _parse_vec(field, payload["v"])
    r = _parse_vec(field, payload["right_inverse"])
    l = _parse_vec(field, payload["left_inverse"])
    omv = vsub(alg.unit, v)
    _check(alg.mul(omv, r) == alg.unit, "right inverse fails re-multiplication")
    _check(alg.mul(l, omv) == alg.unit, "left inverse fails re-multiplication")
    left_set = Subspace.from_vectors(field, alg.dim, [alg.mul(omv, cb) for cb in c.basis])
    right_set = Subspace.from_vectors(field, alg.dim, [alg.mul(bb, omv) for bb in b.basis])
    _check(left_set == right_set, "(1-v)C = B(1-v) fails as subspaces")

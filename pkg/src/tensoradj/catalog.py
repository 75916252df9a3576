"""Built-in catalog of fusion categories and module categories.

Pointed categories come from finite group multiplication tables with a
normalized 3-cocycle; the Fibonacci category carries golden-ratio F-data
over Q(zeta_5) in a rational gauge. Module categories over these are built
later in this file (regular modules and coset modules for a subgroup).
Everything is validated exactly at build time.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import (
    CocycleError,
    EquivalenceError,
    InvalidRescale,
    SchemaError,
    ShapeError,
)
from .exact_scalar import ExactMatrix, ExactScalar, sc
from .fusion_core import FusionCategory, Morphism, ObjectExpr
from .module_cat import ModuleCategory, regular_module
from .functor_cat import ChainCell, ModuleFunctor, functor_axiom_defects

# -- finite groups ----------------------------------------------------


def _perm_compose(p, q):
    # (p . q)(i) = p(q(i))
    return tuple(p[q[i]] for i in range(len(p)))


def _group_from_perms(perms):
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_perm_compose(p, q)] for q in perms] for p in perms]
    return table


def cyclic_table(n: int):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def klein_table():
    # Z/2 x Z/2 with elements (0,0), (1,0), (0,1), (1,1)
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    index = {e: i for i, e in enumerate(elems)}
    return [
        [index[((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)] for b in elems]
        for a in elems
    ]


def s3_table():
    # elements e, r, r2, s, sr, sr2 as permutations of {0,1,2}
    e = (0, 1, 2)
    r = (1, 2, 0)
    r2 = _perm_compose(r, r)
    s = (1, 0, 2)
    perms = [e, r, r2, s, _perm_compose(s, r), _perm_compose(s, r2)]
    return _group_from_perms(perms)


def _group_inverse(table):
    n = len(table)
    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == 0:
                inv[a] = b
    if any(i is None for i in inv):
        raise SchemaError("multiplication table is not a group table")
    return inv


# -- cocycles ---------------------------------------------------------


def trivial_cocycle(n: int):
    one = ExactScalar.one()
    return [[[one for _ in range(n)] for _ in range(n)] for _ in range(n)]


def z2_nontrivial_cocycle():
    w = trivial_cocycle(2)
    w[1][1][1] = sc(-1)
    return w


def z4_nontrivial_cocycle():
    # standard generator of H^3(Z/4, U(1)): w(a,b,c) = i^(a * floor((b+c)/4))
    i = ExactScalar.zeta(4)
    w = [[[i ** (a * ((b + c) // 4)) for c in range(4)] for b in range(4)]
         for a in range(4)]
    return w


def check_cocycle(table, omega) -> None:
    """Verify omega is a normalized 3-cocycle for the group table."""
    n = len(table)
    one = ExactScalar.one()
    for a in range(n):
        for b in range(n):
            if omega[0][a][b] != one or omega[a][0][b] != one or omega[a][b][0] != one:
                raise CocycleError("cocycle is not normalized")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    lhs = omega[b][c][d] * omega[a][table[b][c]][d] * omega[a][b][c]
                    rhs = omega[table[a][b]][c][d] * omega[a][b][table[c][d]]
                    if lhs != rhs:
                        raise CocycleError(
                            f"3-cocycle identity fails at {(a, b, c, d)}"
                        )


# -- category builders ------------------------------------------------


def build_pointed(name: str, table, omega=None, labels=None) -> FusionCategory:
    """Pointed fusion category of a finite group with a 3-cocycle."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise SchemaError("multiplication table is not square")
    if table[0] != list(range(n)) or [row[0] for row in table] != list(range(n)):
        raise SchemaError("element 0 must be the group unit")
    if omega is None:
        omega = trivial_cocycle(n)
    check_cocycle(table, omega)
    inv = _group_inverse(table)
    N = [
        [[1 if table[a][b] == c else 0 for c in range(n)] for b in range(n)]
        for a in range(n)
    ]
    F = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                w = omega[a][b][c]
                if w != ExactScalar.one():
                    d = table[table[a][b]][c]
                    F[(a, b, c, d)] = ExactMatrix(1, 1, [[w]])
    if labels is None:
        labels = [f"g{k}" for k in range(n)]
    return FusionCategory(labels, 0, inv, N, F, name=name)


def golden_ratio() -> ExactScalar:
    """(1 + sqrt5)/2 as -zeta5^2 - zeta5^3 in Q(zeta_5)."""
    z = ExactScalar.zeta(5)
    return -(z ** 2) - z ** 3


def build_fibonacci() -> FusionCategory:
    """The Fibonacci category: simples 1, t with t (x) t = 1 + t."""
    d = golden_ratio()
    dinv = d.inv()
    N = [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 1]],
    ]
    F = {
        # rows/cols ordered by fusion channel: 1 first, then t
        (1, 1, 1, 1): ExactMatrix(2, 2, [[dinv, dinv], [sc(1), -dinv]]),
    }
    return FusionCategory(["1", "t"], 0, [0, 1], N, F, name="fib")


# -- module builders --------------------------------------------------


def build_module_regular(C: FusionCategory) -> ModuleCategory:
    """C acting on itself; cached per category."""
    return regular_module(C)


def pointed_group_table(C: FusionCategory):
    """Recover the group law from a pointed category's fusion rules."""
    n = C.n
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            cs = [c for c in range(n) if C.N[a][b][c]]
            if len(cs) != 1 or C.N[a][b][cs[0]] != 1:
                raise SchemaError("category is not pointed")
            row.append(cs[0])
        table.append(row)
    return table


def build_module_subgroup(C: FusionCategory, subgroup) -> ModuleCategory:
    """The coset module of a subgroup: msimples are left cosets, a group
    element acts by translating cosets, all structure blocks identity.

    Requires a pointed category with a trivial associator; a nontrivial
    associator cannot act through identity blocks, so it is rejected.
    """
    table = pointed_group_table(C)
    H = sorted(set(subgroup))
    if C.unit not in H:
        raise SchemaError("subgroup must contain the unit")
    for h1 in H:
        for h2 in H:
            if table[h1][h2] not in H:
                raise SchemaError("subgroup is not closed under the product")
    for key, blk in C.F.items():
        if not blk.is_identity():
            raise CocycleError(
                "coset module with identity blocks needs a trivial associator"
            )
    n = C.n
    coset_of = [None] * n
    cosets = []
    for g in range(n):
        if coset_of[g] is not None:
            continue
        members = sorted(table[g][h] for h in H)
        idx = len(cosets)
        cosets.append(members)
        for x in members:
            coset_of[x] = idx
    labels = [C.simples[members[0]] + "H" for members in cosets]
    nm = len(cosets)
    A = [
        [
            [1 if coset_of[table[x][cosets[m][0]]] == nn else 0
             for nn in range(nm)]
            for m in range(nm)
        ]
        for x in range(n)
    ]
    M = ModuleCategory(C, labels, A, name=(C.name or "C") + ":cosets")
    bad = M.validate()
    if bad:
        raise SchemaError(f"coset module invalid: {bad[:3]}")
    return M


# -- gauge transforms and equivalences --------------------------------


def _check_gauge(M: ModuleCategory, lam):
    C = M.base
    if len(lam) != C.n or any(len(row) != M.nm for row in lam):
        raise SchemaError("gauge table must be indexed by (simple, msimple)")
    out = [[sc(v) for v in row] for row in lam]
    for x in range(C.n):
        for m in range(M.nm):
            if out[x][m].is_zero():
                raise InvalidRescale(f"gauge scalar at {(x, m)} is zero")
    for m in range(M.nm):
        if not out[C.unit][m].is_one():
            raise SchemaError("gauge scalars at the unit must be 1")
    return out


def gauge_transform_module(M: ModuleCategory, lam) -> ModuleCategory:
    """Rescale the chosen action bases by lam[x][m] and return the module
    with the correspondingly conjugated structure blocks."""
    lam = _check_gauge(M, lam)
    C = M.base
    blocks = {}
    for x in range(C.n):
        for y in range(C.n):
            for m in range(M.nm):
                for n in range(M.nm):
                    left = M.left_mtrees(x, y, m, n)
                    if not left:
                        continue
                    right = M.right_mtrees(x, y, m, n)
                    B = M.m_block(x, y, m, n)
                    B2 = ExactMatrix.zeros(len(right), len(left))
                    for r, (n2, _beta, _gamma) in enumerate(right):
                        rowscale = lam[x][n2] * lam[y][m]
                        for c, (e, _mu, _alpha) in enumerate(left):
                            v = B[r, c]
                            if v.is_zero():
                                continue
                            B2[r, c] = rowscale * v / lam[e][m]
                    if not B2.is_identity():
                        blocks[(x, y, m, n)] = B2
    M2 = ModuleCategory(C, list(M.msimples), M.A, blocks,
                        name=(M.name or "M") + ":gauge")
    bad = M2.validate()
    if bad:
        raise SchemaError(f"gauge transform produced an invalid module: {bad[:3]}")
    return M2


def _identity_objs(M: ModuleCategory):
    return [ObjectExpr.simple(M.nm, m) for m in range(M.nm)]


def _identity_comps_cell(F: ModuleFunctor) -> ChainCell:
    M = F.target
    comps = [Morphism.identity(M.msimple_obj(m)) for m in range(F.source.nm)]
    return ChainCell(F, ModuleFunctor.identity(F.source), comps)


def gauge_equivalence(M: ModuleCategory, lam):
    """The identity-table equivalence between M and its gauge transform.

    Returns (M2, equivalence) where the forward functor carries coherence
    lam[x][m] and the backward functor its inverse.
    """
    from .adjoint_algebras import ModuleEquivalence

    lam = _check_gauge(M, lam)
    M2 = gauge_transform_module(M, lam)
    C = M.base
    coh_f = {}
    coh_b = {}
    for x in range(C.n):
        xobj = ObjectExpr.simple(C.n, x)
        for m in range(M.nm):
            ident = Morphism.identity(M.act_obj(xobj, M.msimple_obj(m)))
            coh_f[(x, m)] = ident.scale(lam[x][m])
            coh_b[(x, m)] = ident.scale(lam[x][m].inv())
    X = ModuleFunctor.atomic(M, M2, _identity_objs(M), coh_f, name="gauge")
    Y = ModuleFunctor.atomic(M2, M, _identity_objs(M), coh_b, name="gauge-inv")
    for F in (X, Y):
        bad = functor_axiom_defects(F)
        if bad:
            raise EquivalenceError(f"gauge functor axiom fails at {bad[:3]}")
    alpha = _identity_comps_cell(Y.then(X))
    beta = _identity_comps_cell(X.then(Y))
    return M2, ModuleEquivalence(X=X, Y=Y, alpha=alpha, beta=beta)


def relabel_equivalence(M: ModuleCategory, perm):
    """The auto-equivalence of M that permutes its simples, with identity
    coherence. The permutation must preserve the action multiplicities and
    the structure blocks; otherwise the functor axiom fails and the
    construction is rejected."""
    from .adjoint_algebras import ModuleEquivalence

    nm = M.nm
    if sorted(perm) != list(range(nm)):
        raise SchemaError("relabeling must be a permutation of the msimples")
    inv = [0] * nm
    for m, p in enumerate(perm):
        inv[p] = m
    C = M.base
    for x in range(C.n):
        for m in range(nm):
            for n in range(nm):
                if M.A[x][m][n] != M.A[x][perm[m]][perm[n]]:
                    raise EquivalenceError(
                        "relabeling does not preserve the action"
                    )
    X = ModuleFunctor.atomic(
        M, M, [ObjectExpr.simple(nm, perm[m]) for m in range(nm)], name="relabel"
    )
    Y = ModuleFunctor.atomic(
        M, M, [ObjectExpr.simple(nm, inv[m]) for m in range(nm)], name="relabel-inv"
    )
    for F in (X, Y):
        bad = functor_axiom_defects(F)
        if bad:
            raise EquivalenceError(f"relabel functor axiom fails at {bad[:3]}")
    alpha = _identity_comps_cell(Y.then(X))
    beta = _identity_comps_cell(X.then(Y))
    return ModuleEquivalence(X=X, Y=Y, alpha=alpha, beta=beta)


# -- JSON serialization -----------------------------------------------

CAT_FORMAT = "tensoradj-cat/1"
MOD_FORMAT = "tensoradj-mod/1"
FUN_FORMAT = "tensoradj-fun/1"


def _mat_to_doc(mat: ExactMatrix):
    return [[mat[r, c].to_json() for c in range(mat.cols)]
            for r in range(mat.rows)]


def _mat_from_doc(doc) -> ExactMatrix:
    try:
        rows = len(doc)
        cols = len(doc[0]) if rows else 0
        entries = [[ExactScalar.from_json(cell) for cell in row] for row in doc]
    except SchemaError:
        raise
    except (TypeError, IndexError, ShapeError) as exc:
        raise SchemaError(f"bad matrix document: {exc}") from exc
    if any(len(row) != cols for row in entries):
        raise SchemaError("ragged matrix document")
    return ExactMatrix(rows, cols, entries)


def _blockdiag(blocks) -> ExactMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = ExactMatrix.zeros(rows, cols)
    r0 = c0 = 0
    for b in blocks:
        for r in range(b.rows):
            for c in range(b.cols):
                v = b[r, c]
                if not v.is_zero():
                    out[r0 + r, c0 + c] = v
        r0 += b.rows
        c0 += b.cols
    return out


def _blockdiag_split(mat: ExactMatrix, row_sizes, col_sizes):
    if sum(row_sizes) != mat.rows or sum(col_sizes) != mat.cols:
        raise SchemaError("block matrix size does not match the fusion data")
    out = []
    r0 = c0 = 0
    for rs, cs in zip(row_sizes, col_sizes):
        b = ExactMatrix.zeros(rs, cs)
        for r in range(rs):
            for c in range(cs):
                b[r, c] = mat[r0 + r, c0 + c]
        out.append(b)
        r0 += rs
        c0 += cs
    return out


def category_to_json(C: FusionCategory) -> dict:
    N = []
    for a in range(C.n):
        for b in range(C.n):
            for c in range(C.n):
                if C.N[a][b][c]:
                    N.append([a, b, c, C.N[a][b][c]])
    F = []
    for key in sorted(C.F):
        blk = C.F[key]
        if not blk.is_identity():
            F.append({"abcd": list(key), "matrix": _mat_to_doc(blk)})
    return {
        "format": CAT_FORMAT,
        "simples": list(C.simples),
        "unit": C.unit,
        "dual": list(C.dual),
        "N": N,
        "F": F,
    }


def _require(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"document is missing '{key}'")
    return doc[key]


def category_from_json(doc: dict, name: str = "") -> FusionCategory:
    if _require(doc, "format") != CAT_FORMAT:
        raise SchemaError(f"not a {CAT_FORMAT} document")
    simples = _require(doc, "simples")
    unit = _require(doc, "unit")
    dual = _require(doc, "dual")
    n = len(simples)
    if not isinstance(unit, int) or not (0 <= unit < n):
        raise SchemaError("bad unit index")
    if len(dual) != n or sorted(dual) != list(range(n)):
        raise SchemaError("bad dual table")
    N = [[[0] * n for _ in range(n)] for _ in range(n)]
    for item in _require(doc, "N"):
        try:
            a, b, c, mult = item
            N[a][b][c] = int(mult)
        except (ValueError, TypeError, IndexError) as exc:
            raise SchemaError(f"bad N entry {item!r}") from exc
    F = {}
    for item in _require(doc, "F"):
        key = tuple(_require(item, "abcd"))
        if len(key) != 4 or not all(
            isinstance(k, int) and 0 <= k < n for k in key
        ):
            raise SchemaError(f"bad F key {key!r}")
        F[key] = _mat_from_doc(_require(item, "matrix"))
    return FusionCategory(simples, unit, dual, N, F, name=name)


def _module_left_sizes(base: FusionCategory, A, nm, x, y, m):
    return [
        sum(base.N[x][y][e] * A[e][m][n] for e in range(base.n))
        for n in range(nm)
    ]


def _module_right_sizes(A, nm, x, y, m):
    return [
        sum(A[y][m][n2] * A[x][n2][n] for n2 in range(nm))
        for n in range(nm)
    ]


def module_to_json(M: ModuleCategory, base_id: str) -> dict:
    A = []
    for x in range(M.base.n):
        for m in range(M.nm):
            for n in range(M.nm):
                if M.A[x][m][n]:
                    A.append([x, m, n, M.A[x][m][n]])
    keys = sorted({(x, y, m) for (x, y, m, _n) in M.Mblocks})
    blocks = []
    for (x, y, m) in keys:
        per_n = [M.m_block(x, y, m, n) for n in range(M.nm)]
        big = _blockdiag(per_n)
        if not big.is_identity():
            blocks.append({"xym": [x, y, m], "matrix": _mat_to_doc(big)})
    return {
        "format": MOD_FORMAT,
        "base": base_id,
        "msimples": list(M.msimples),
        "A": A,
        "Mblocks": blocks,
    }


def module_from_json(doc: dict, base: FusionCategory,
                     name: str = "") -> ModuleCategory:
    if _require(doc, "format") != MOD_FORMAT:
        raise SchemaError(f"not a {MOD_FORMAT} document")
    msimples = _require(doc, "msimples")
    nm = len(msimples)
    A = [[[0] * nm for _ in range(nm)] for _ in range(base.n)]
    for item in _require(doc, "A"):
        try:
            x, m, n, mult = item
            A[x][m][n] = int(mult)
        except (ValueError, TypeError, IndexError) as exc:
            raise SchemaError(f"bad action entry {item!r}") from exc
    blocks = {}
    for item in _require(doc, "Mblocks"):
        key = tuple(_require(item, "xym"))
        if len(key) != 3:
            raise SchemaError(f"bad block key {key!r}")
        x, y, m = key
        big = _mat_from_doc(_require(item, "matrix"))
        per_n = _blockdiag_split(
            big,
            _module_right_sizes(A, nm, x, y, m),
            _module_left_sizes(base, A, nm, x, y, m),
        )
        for n, blk in enumerate(per_n):
            if blk.rows and not blk.is_identity():
                blocks[(x, y, m, n)] = blk
    return ModuleCategory(base, msimples, A, blocks, name=name)


def functor_to_json(F: ModuleFunctor, source_id: str, target_id: str) -> dict:
    """Materialize a functor (atom or chain) as a single table-plus-blocks
    record."""
    src, tgt = F.source, F.target
    table = []
    images = [F.on_simple(m) for m in range(src.nm)]
    for m in range(src.nm):
        for n in range(tgt.nm):
            if images[m].mult[n]:
                table.append([m, n, images[m].mult[n]])
    coherence = []
    for x in range(src.base.n):
        xobj = ObjectExpr.simple(src.base.n, x)
        for m in range(src.nm):
            c = F.coh(xobj, src.msimple_obj(m))
            big = _blockdiag(c.blocks)
            if not big.is_identity():
                coherence.append({"xm": [x, m], "matrix": _mat_to_doc(big)})
    return {
        "format": FUN_FORMAT,
        "source": source_id,
        "target": target_id,
        "table": table,
        "coherence": coherence,
    }


def functor_from_json(doc: dict, source: ModuleCategory,
                      target: ModuleCategory, name: str = "") -> ModuleFunctor:
    if _require(doc, "format") != FUN_FORMAT:
        raise SchemaError(f"not a {FUN_FORMAT} document")
    mult = [[0] * target.nm for _ in range(source.nm)]
    for item in _require(doc, "table"):
        try:
            m, n, k = item
            mult[m][n] = int(k)
        except (ValueError, TypeError, IndexError) as exc:
            raise SchemaError(f"bad table entry {item!r}") from exc
    objs = [ObjectExpr(tuple(row)) for row in mult]
    coh = {}
    for item in _require(doc, "coherence"):
        key = tuple(_require(item, "xm"))
        if len(key) != 2:
            raise SchemaError(f"bad coherence key {key!r}")
        x, m = key
        big = _mat_from_doc(_require(item, "matrix"))
        xobj = ObjectExpr.simple(source.base.n, x)
        src_obj = ObjectExpr(tuple(
            sum(source.A[x][m][n2] * mult[n2][n] for n2 in range(source.nm))
            for n in range(target.nm)
        ))
        tgt_obj = target.act_obj(xobj, objs[m])
        if src_obj.mult != tgt_obj.mult:
            raise SchemaError(
                f"coherence block ({x},{m}) connects unequal objects"
            )
        sizes = list(src_obj.mult)
        per_n = _blockdiag_split(big, sizes, sizes)
        coh[(x, m)] = Morphism(src_obj, tgt_obj, per_n)
    return ModuleFunctor.atomic(source, target, objs, coh, name=name)


# -- the shipped catalog ----------------------------------------------


@dataclass
class CatalogEntry:
    """One catalog item: a category or a module, validated at load."""

    id: str
    kind: str
    data: object
    note: str


def _builtin_categories():
    return [
        ("vecz2", "group Z/2, trivial associator",
         lambda: build_pointed("vecz2", cyclic_table(2))),
        ("vecz2w", "group Z/2, sign associator on the odd triple",
         lambda: build_pointed("vecz2w", cyclic_table(2),
                               z2_nontrivial_cocycle())),
        ("vecz3", "group Z/3, trivial associator",
         lambda: build_pointed("vecz3", cyclic_table(3))),
        ("vecz4", "group Z/4, trivial associator",
         lambda: build_pointed("vecz4", cyclic_table(4))),
        ("vecz4w", "group Z/4, fourth-root associator",
         lambda: build_pointed("vecz4w", cyclic_table(4),
                               z4_nontrivial_cocycle())),
        ("vecz2z2", "group Z/2 x Z/2, trivial associator",
         lambda: build_pointed("vecz2z2", klein_table())),
        ("vecs3", "group S3, trivial associator",
         lambda: build_pointed("vecs3", s3_table())),
        ("fib", "Fibonacci rules with golden-ratio recoupling",
         lambda: build_fibonacci()),
    ]


def _builtin_modules(cats):
    out = []
    for cid in cats:
        out.append((cid, "regular", "category acting on itself",
                    lambda c=cats[cid]: regular_module(c)))
    out.append(("vecz2", "vec",
                "one-object module: cosets of the whole group",
                lambda: build_module_subgroup(cats["vecz2"], [0, 1])))
    out.append(("vecs3", "cosets-a3",
                "two-object module: cosets of the rotation subgroup",
                lambda: build_module_subgroup(cats["vecs3"], [0, 1, 2])))
    return out


_catalog_cache: dict = {}


def _load_builtin():
    cats = {}
    entries = []
    for cid, note, build in _builtin_categories():
        C = build()
        bad = C.validate()
        if bad:
            raise SchemaError(f"catalog category {cid} invalid: {bad[:3]}")
        cats[cid] = C
        entries.append(CatalogEntry(cid, "category", C, note))
    mods = {}
    for cid, mid, note, build in _builtin_modules(cats):
        M = build()
        bad = M.validate()
        if bad:
            raise SchemaError(f"catalog module {cid}/{mid} invalid: {bad[:3]}")
        M.require_indecomposable()
        mods[(cid, mid)] = M
        entries.append(CatalogEntry(f"{cid}/{mid}", "module", M, note))
    return cats, mods, entries


def _load_external(path: str):
    root = Path(path)
    if not root.is_dir():
        raise SchemaError(f"catalog override {path!r} is not a directory")
    docs = []
    for fp in sorted(root.glob("*.json")):
        try:
            with open(fp, "r", encoding="utf-8") as fh:
                docs.append((fp.stem, json.load(fh)))
        except (OSError, json.JSONDecodeError) as exc:
            raise SchemaError(f"cannot read catalog file {fp}: {exc}") from exc
    cats = {}
    mods = {}
    entries = []
    for stem, doc in docs:
        if _require(doc, "format") == CAT_FORMAT:
            C = category_from_json(doc, name=stem)
            bad = C.validate()
            if bad:
                raise SchemaError(f"catalog category {stem} invalid: {bad[:3]}")
            cats[stem] = C
            entries.append(CatalogEntry(stem, "category", C, f"file {stem}"))
    for stem, doc in docs:
        if doc.get("format") != MOD_FORMAT:
            continue
        base_id = _require(doc, "base")
        if base_id not in cats:
            raise SchemaError(
                f"module file {stem} references unknown category {base_id!r}"
            )
        mid = stem[len(base_id) + 1:] if stem.startswith(base_id + ".") else stem
        M = module_from_json(doc, cats[base_id], name=f"{base_id}:{mid}")
        bad = M.validate()
        if bad:
            raise SchemaError(f"catalog module {stem} invalid: {bad[:3]}")
        mods[(base_id, mid)] = M
        entries.append(
            CatalogEntry(f"{base_id}/{mid}", "module", M, f"file {stem}")
        )
    return cats, mods, entries


def _catalog_state():
    override = os.environ.get("TENSORADJ_CATALOG") or ""
    got = _catalog_cache.get(override)
    if got is None:
        got = _load_external(override) if override else _load_builtin()
        _catalog_cache[override] = got
    return got


def catalog_entries() -> list[CatalogEntry]:
    """All catalog entries, categories before modules, in load order."""
    return list(_catalog_state()[2])


def category_ids() -> list[str]:
    return sorted(_catalog_state()[0])


def get_category(cid: str) -> FusionCategory:
    cats = _catalog_state()[0]
    if cid not in cats:
        raise SchemaError(f"unknown catalog category {cid!r}")
    return cats[cid]


def module_ids(cid: str) -> list[str]:
    get_category(cid)
    return sorted(m for (c, m) in _catalog_state()[1] if c == cid)


def get_module(cid: str, mid: str) -> ModuleCategory:
    mods = _catalog_state()[1]
    if (cid, mid) not in mods:
        raise SchemaError(f"unknown catalog module {cid!r}/{mid!r}")
    return mods[(cid, mid)]

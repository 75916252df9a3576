"""Module functors, module natural transformations, and adjunctions.

A module functor is stored as a chain of atomic functors; composition is
concatenation, so composites are strictly associative and no bracketing
bookkeeping ever appears. Applying a chain to an object folds the atoms in
order. Every application enumerates the copies of the result by canonical
labels (source simple, copy, functor-specific slot), and 2-cells between
chains are stored by their components at the source module simples; the
extension of a 2-cell to composite objects is computed from those labels.

Atomic functors carry action-coherence blocks c_{x,m}: F(x . m) -> x . F(m).
Right and left adjoints of an atomic functor are synthesized: the adjoint's
table is the transpose, unit and counit are coordinate cells, and the
adjoint's coherence is solved blockwise from naturality of the (co)unit.
Mates and the comparison isomorphism *(F o G) -> *G o *F are built from
whiskered pastings of these cells.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import AdjunctionError, ShapeError
from .exact_scalar import ExactMatrix
from .fusion_core import (
    Morphism,
    ObjectExpr,
    hom_basis,
    mor_to_vec,
    solve_morphism_equation,
    vec_to_mor,
)
from .module_cat import ModuleCategory

_serial = itertools.count()


class FunctorAtom:
    """Concrete module functor data: images of simples plus coherence blocks."""

    __slots__ = ("source", "target", "objs", "coh", "name", "serial")

    def __init__(self, source: ModuleCategory, target: ModuleCategory, objs,
                 coh=None, name=""):
        self.source = source
        self.target = target
        self.objs = list(objs)
        self.coh = dict(coh or {})
        self.name = name
        self.serial = next(_serial)

    def obj(self, P: ObjectExpr) -> ObjectExpr:
        mult = [0] * self.target.nm
        for m, j in P.copies():
            for s, k in enumerate(self.objs[m].mult):
                mult[s] += k
        return ObjectExpr(tuple(mult))

    def labels(self, P: ObjectExpr):
        """Per target simple: ordered copy labels (m, j, t)."""
        out = [[] for _ in range(self.target.nm)]
        for m, j in P.copies():
            for s in range(self.target.nm):
                for t in range(self.objs[m].mult[s]):
                    out[s].append((m, j, t))
        return out

    def coh_block(self, x: int, m: int) -> Morphism:
        """c_{x,m}: F(x . m) -> x . F(m) as a morphism in the target."""
        got = self.coh.get((x, m))
        if got is not None:
            return got
        src = self.obj(self.source.act_obj(
            ObjectExpr.simple(self.source.base.n, x), self.source.msimple_obj(m)))
        tgt = self.target.act_obj(
            ObjectExpr.simple(self.target.base.n, x), self.objs[m])
        if src.mult != tgt.mult:
            raise ShapeError(
                f"missing coherence block ({x},{m}) with unequal endpoints"
            )
        return Morphism.identity(src)


class ModuleFunctor:
    """A chain of atoms; parts[0] is applied first. Empty chain = identity."""

    __slots__ = ("source", "target", "parts")

    def __init__(self, source: ModuleCategory, target: ModuleCategory, parts=()):
        self.source = source
        self.target = target
        self.parts = tuple(parts)

    # -- construction -------------------------------------------------

    @staticmethod
    def atomic(source, target, objs, coh=None, name="") -> "ModuleFunctor":
        atom = FunctorAtom(source, target, objs, coh, name)
        return ModuleFunctor(source, target, (atom,))

    @staticmethod
    def identity(M: ModuleCategory) -> "ModuleFunctor":
        return ModuleFunctor(M, M, ())

    def then(self, outer: "ModuleFunctor") -> "ModuleFunctor":
        """outer o self (self applied first)."""
        if outer.source is not self.target:
            raise ShapeError("functor composition endpoint mismatch")
        return ModuleFunctor(self.source, outer.target, self.parts + outer.parts)

    def key(self):
        return tuple(a.serial for a in self.parts)

    def same_as(self, other: "ModuleFunctor") -> bool:
        return (
            self.source is other.source
            and self.target is other.target
            and self.key() == other.key()
        )

    # -- application --------------------------------------------------

    def obj(self, P: ObjectExpr) -> ObjectExpr:
        for atom in self.parts:
            P = atom.obj(P)
        return P

    def on_simple(self, m: int) -> ObjectExpr:
        return self.obj(ObjectExpr.simple(self.source.nm, m))

    def mor(self, g: Morphism) -> Morphism:
        for atom in self.parts:
            g = _atom_mor(atom, g)
        return g

    def labels(self, P: ObjectExpr):
        """Per target simple: ordered labels (m, j, t) of the copies of the
        result; t is a nested slot label identifying the copy within the
        image of the source simple m."""
        return _labels(self, P)

    def simple_labels(self, m: int):
        """Per target simple: ordered slot labels for the image of simple m."""
        ext = _labels(self, ObjectExpr.simple(self.source.nm, m))
        return [[t for (_, _, t) in lst] for lst in ext]

    def coh(self, X: ObjectExpr, P: ObjectExpr) -> Morphism:
        """Coherence F(X . P) -> X . F(P) for composite X and P.

        Cached per chain; only call this once an atom's coherence blocks
        are fully populated.
        """
        key = (id(self.source), self.key(), X.mult, P.mult)
        got = _coh_cache.get(key)
        if got is not None:
            return got
        if not self.parts:
            out = Morphism.identity(self.source.act_obj(X, P))
        else:
            first = self.parts[0]
            rest = ModuleFunctor(first.target, self.target, self.parts[1:])
            c1 = _atom_coh(first, X, P)
            out = rest.coh(X, first.obj(P)) @ rest.mor(c1)
        _coh_cache[key] = out
        return out

    def __repr__(self):
        names = [a.name or f"atom{a.serial}" for a in self.parts]
        return "ModuleFunctor(" + (" ; ".join(names) or "Id") + ")"


_label_cache: dict = {}
_coh_cache: dict = {}


def _labels(F: ModuleFunctor, P: ObjectExpr):
    key = (F.key(), P.mult)
    got = _label_cache.get(key)
    if got is not None:
        return got
    if not F.parts:
        out = [
            [(s, j, ()) for j in range(P.mult[s])] for s in range(len(P.mult))
        ]
    else:
        first = F.parts[0]
        rest = ModuleFunctor(first.target, F.target, F.parts[1:])
        l1 = first.labels(P)
        l2 = _labels(rest, first.obj(P))
        single = len(F.parts) == 1
        out = []
        for lst in l2:
            cur = []
            for n1, j1, t2 in lst:
                m, j, t1 = l1[n1][j1]
                cur.append((m, j, t1 if single else (n1, t1, t2)))
            out.append(cur)
    _label_cache[key] = out
    return out


def _atom_mor(atom: FunctorAtom, g: Morphism) -> Morphism:
    src = atom.obj(g.source)
    tgt = atom.obj(g.target)
    sl = atom.labels(g.source)
    tl = atom.labels(g.target)
    tindex = [{lab: k for k, lab in enumerate(lst)} for lst in tl]
    blocks = []
    for s in range(atom.target.nm):
        mblk = ExactMatrix.zeros(tgt.mult[s], src.mult[s])
        for col, (m, j, t) in enumerate(sl[s]):
            gm = g.blocks[m]
            for j2 in range(gm.rows):
                v = gm[j2, j]
                if not v.is_zero():
                    mblk[tindex[s][(m, j2, t)], col] = v
        blocks.append(mblk)
    return Morphism(src, tgt, blocks)


def _atom_coh(atom: FunctorAtom, X: ObjectExpr, P: ObjectExpr) -> Morphism:
    """Assemble c_{X,P} of an atom from its simple coherence blocks."""
    Msrc, Mtgt = atom.source, atom.target
    XP = Msrc.act_obj(X, P)
    src = atom.obj(XP)
    FP = atom.obj(P)
    tgt = Mtgt.act_obj(X, FP)
    src_labels = atom.labels(XP)
    p_labels = atom.labels(P)
    p_index = [{lab: k for k, lab in enumerate(lst)} for lst in p_labels]
    blocks = []
    for q in range(Mtgt.nm):
        mblk = ExactMatrix.zeros(tgt.mult[q], src.mult[q])
        for col, (n, e_idx, t) in enumerate(src_labels[q]):
            x, i, m, j, alpha = Msrc.act_entries(X, P, n)[e_idx]
            xobj = ObjectExpr.simple(Msrc.base.n, x)
            stored = atom.coh_block(x, m)
            # column of the stored block: entry (n, alpha, t) of F(x . m)
            sc_pos = _atom_act_index(atom, x, m, q, n, alpha, t)
            rows = Mtgt.act_entries(xobj, atom.objs[m], q)
            for r, (_, _, p, tp, beta) in enumerate(rows):
                v = stored.blocks[q][r, sc_pos]
                if v.is_zero():
                    continue
                c = p_index[p][(m, j, tp)]
                row = Mtgt.act_index(X, FP, q, (x, i, p, c, beta))
                mblk[row, col] = mblk[row, col] + v
        blocks.append(mblk)
    return Morphism(src, tgt, blocks)


def _atom_act_index(atom, x, m, q, n, alpha, t):
    xobj = ObjectExpr.simple(atom.source.base.n, x)
    mobj = atom.source.msimple_obj(m)
    xm = atom.source.act_obj(xobj, mobj)
    labels = atom.labels(xm)[q]
    e = atom.source.act_index(xobj, mobj, n, (x, 0, m, 0, alpha))
    return labels.index((n, e, t))


class ChainCell:
    """A module natural transformation between two chains."""

    __slots__ = ("F", "G", "comps")

    def __init__(self, F: ModuleFunctor, G: ModuleFunctor, comps):
        if F.source is not G.source or F.target is not G.target:
            raise ShapeError("cell endpoints live in different categories")
        comps = list(comps)
        if len(comps) != F.source.nm:
            raise ShapeError("cell component count mismatch")
        for m, c in enumerate(comps):
            if c.source.mult != F.on_simple(m).mult or \
               c.target.mult != G.on_simple(m).mult:
                raise ShapeError(f"cell component {m} has wrong endpoints")
        self.F = F
        self.G = G
        self.comps = comps

    @staticmethod
    def identity(F: ModuleFunctor) -> "ChainCell":
        return ChainCell(
            F, F, [Morphism.identity(F.on_simple(m)) for m in range(F.source.nm)]
        )

    def component_at(self, P: ObjectExpr) -> Morphism:
        """The extension of the cell to a composite module object."""
        F, G = self.F, self.G
        src = F.obj(P)
        tgt = G.obj(P)
        fl = F.labels(P)
        gl = G.labels(P)
        g_index = [{lab: k for k, lab in enumerate(lst)} for lst in gl]
        f_slot = [
            [{t: k for k, t in enumerate(lst)} for lst in F.simple_labels(m)]
            for m in range(F.source.nm)
        ]
        g_slot = [G.simple_labels(m) for m in range(G.source.nm)]
        nm = F.target.nm
        blocks = []
        for s in range(nm):
            mblk = ExactMatrix.zeros(tgt.mult[s], src.mult[s])
            for col, (m, j, tF) in enumerate(fl[s]):
                theta = self.comps[m].blocks[s]
                fpos = f_slot[m][s][tF]
                for r in range(theta.rows):
                    v = theta[r, fpos]
                    if not v.is_zero():
                        tG = g_slot[m][s][r]
                        row = g_index[s][(m, j, tG)]
                        mblk[row, col] = v
            blocks.append(mblk)
        return Morphism(src, tgt, blocks)

    # -- cell algebra -------------------------------------------------

    def then(self, second: "ChainCell") -> "ChainCell":
        """Vertical composition: second after self."""
        if not self.G.same_as(second.F):
            raise ShapeError("vertical composition endpoint mismatch")
        return ChainCell(
            self.F,
            second.G,
            [b @ a for a, b in zip(self.comps, second.comps)],
        )

    def __add__(self, other: "ChainCell") -> "ChainCell":
        if not (self.F.same_as(other.F) and self.G.same_as(other.G)):
            raise ShapeError("cell addition endpoint mismatch")
        return ChainCell(
            self.F, self.G, [a + b for a, b in zip(self.comps, other.comps)]
        )

    def scale(self, k) -> "ChainCell":
        return ChainCell(self.F, self.G, [c.scale(k) for c in self.comps])

    def inverse(self) -> "ChainCell":
        return ChainCell(self.G, self.F, [c.inverse() for c in self.comps])

    def __eq__(self, other):
        if not isinstance(other, ChainCell):
            return NotImplemented
        return (
            self.F.same_as(other.F)
            and self.G.same_as(other.G)
            and all(a == b for a, b in zip(self.comps, other.comps))
        )

    def is_identity(self) -> bool:
        return all(c.is_identity() for c in self.comps)

    def is_module_natural(self) -> bool:
        return not naturality_defects(self)


def naturality_defects(cell: ChainCell) -> list:
    """Pairs (x, m) where the module-naturality square fails."""
    M = cell.F.source
    C = M.base
    bad = []
    for x in range(C.n):
        xobj = ObjectExpr.simple(C.n, x)
        for m in range(M.nm):
            P = M.msimple_obj(m)
            XP = M.act_obj(xobj, P)
            lhs = cell.G.coh(xobj, P) @ cell.component_at(XP)
            rhs = cell.F.target.act_mor(
                Morphism.identity(xobj), cell.comps[m]
            ) @ cell.F.coh(xobj, P)
            if lhs != rhs:
                bad.append((x, m))
    return bad


def functor_axiom_defects(F: ModuleFunctor) -> list:
    """Triples (x, y, m) where the coherence axiom of F fails, plus
    pairs ('unit', m) where the unit coherence is not the identity."""
    Msrc, Mtgt = F.source, F.target
    C = Msrc.base
    bad = []
    for x in range(C.n):
        X = C.simple_obj(x)
        for y in range(C.n):
            Y = C.simple_obj(y)
            XY = C.tensor_obj(X, Y)
            for m in range(Msrc.nm):
                P = Msrc.msimple_obj(m)
                YP = Msrc.act_obj(Y, P)
                lhs = (
                    Mtgt.act_mor(Morphism.identity(X), F.coh(Y, P))
                    @ F.coh(X, YP)
                    @ F.mor(Msrc.module_assoc(X, Y, P))
                )
                rhs = Mtgt.module_assoc(X, Y, F.obj(P)) @ F.coh(XY, P)
                if lhs != rhs:
                    bad.append((x, y, m))
    U = C.simple_obj(C.unit)
    for m in range(Msrc.nm):
        if not F.coh(U, Msrc.msimple_obj(m)).is_identity():
            bad.append(("unit", m))
    return bad


def validate_functor(F: ModuleFunctor) -> None:
    bad = functor_axiom_defects(F)
    if bad:
        raise ShapeError(f"module functor axiom fails at {bad[:5]}")


# -- whiskering ------------------------------------------------------


def whisker_outer(H: ModuleFunctor, cell: ChainCell) -> ChainCell:
    """H o cell: (H o F) => (H o G)."""
    return ChainCell(
        cell.F.then(H),
        cell.G.then(H),
        [H.mor(c) for c in cell.comps],
    )


def whisker_inner(cell: ChainCell, H: ModuleFunctor) -> ChainCell:
    """cell o H: (F o H) => (G o H)."""
    return ChainCell(
        H.then(cell.F),
        H.then(cell.G),
        [cell.component_at(H.on_simple(m)) for m in range(H.source.nm)],
    )


def hcomp(outer_cell: ChainCell, inner_cell: ChainCell) -> ChainCell:
    """Horizontal composition; inner_cell's functors are applied first."""
    return whisker_outer(outer_cell.F, inner_cell).then(
        whisker_inner(outer_cell, inner_cell.G)
    )


# -- adjunctions -----------------------------------------------------


@dataclass
class AdjunctionData:
    """F left adjoint to G, with unit Id => G o F and counit F o G => Id."""

    F: ModuleFunctor
    G: ModuleFunctor
    unit: ChainCell
    counit: ChainCell


def _single_atom(F: ModuleFunctor) -> FunctorAtom:
    if len(F.parts) != 1:
        raise AdjunctionError("adjoint synthesis needs an atomic functor")
    return F.parts[0]


def _transpose_objs(atom: FunctorAtom):
    objs = []
    for n in range(atom.target.nm):
        mult = tuple(atom.objs[m].mult[n] for m in range(atom.source.nm))
        objs.append(ObjectExpr(mult))
    return objs


def _coordinate_unit(F: ModuleFunctor, G: ModuleFunctor) -> ChainCell:
    """Id => G o F with 1s pairing copy t of n in F(m) with itself."""
    M = F.source
    GF = F.then(G)
    comps = []
    for m in range(M.nm):
        tgt = GF.on_simple(m)
        mor = Morphism.zero(M.msimple_obj(m), tgt)
        for s, lst in enumerate(GF.labels(ObjectExpr.simple(M.nm, m))):
            if s != m:
                continue
            for row, (_, _, t) in enumerate(lst):
                n1, t1, t2 = t
                if t1 == t2:
                    mor.blocks[s][row, 0] = mor.blocks[s][row, 0] + 1
        comps.append(mor)
    return ChainCell(ModuleFunctor.identity(M), GF, comps)


def _coordinate_counit(G: ModuleFunctor, F: ModuleFunctor) -> ChainCell:
    """F o G => Id with 1s pairing copy t of n' in the roundtrip."""
    M2 = F.target
    FG = G.then(F)
    comps = []
    for n in range(M2.nm):
        src = FG.on_simple(n)
        mor = Morphism.zero(src, M2.msimple_obj(n))
        for s, lst in enumerate(FG.labels(ObjectExpr.simple(M2.nm, n))):
            if s != n:
                continue
            for col, (_, _, t) in enumerate(lst):
                n1, t1, t2 = t
                if t1 == t2:
                    mor.blocks[s][0, col] = mor.blocks[s][0, col] + 1
        comps.append(mor)
    return ChainCell(FG, ModuleFunctor.identity(M2), comps)


def right_adjoint(F: ModuleFunctor) -> AdjunctionData:
    """Synthesize F -| G and solve G's coherence from counit naturality."""
    atom = _single_atom(F)
    M, M2 = atom.source, atom.target
    gatom = FunctorAtom(M2, M, _transpose_objs(atom), {},
                        name=f"radj({atom.name or atom.serial})")
    G = ModuleFunctor(M2, M, (gatom,))
    unit = _coordinate_unit(F, G)
    counit = _coordinate_counit(G, F)
    # solve each coherence block of G from naturality of the counit
    C2 = M2.base
    for x in range(C2.n):
        xobj = ObjectExpr.simple(C2.n, x)
        for n in range(M2.nm):
            nobj = M2.msimple_obj(n)
            Gn = gatom.objs[n]
            src = gatom.obj(M2.act_obj(xobj, nobj))
            tgt = M.act_obj(xobj, Gn)
            idx = Morphism.identity(xobj)
            rhs = counit.component_at(M2.act_obj(xobj, nobj))
            post = M2.act_mor(idx, counit.comps[n]) @ F.coh(xobj, Gn)

            def apply_fn(u, post=post):
                return post @ _atom_mor(atom, u)

            try:
                sol, unique = solve_morphism_equation(apply_fn, rhs, src, tgt)
            except ShapeError as exc:
                raise AdjunctionError(f"no adjoint coherence at {(x,n)}: {exc}")
            if not unique:
                raise AdjunctionError(f"adjoint coherence not unique at {(x,n)}")
            if not sol.is_invertible():
                raise AdjunctionError(f"adjoint coherence singular at {(x,n)}")
            gatom.coh[(x, n)] = sol
    adj = AdjunctionData(F, G, unit, counit)
    _check_triangles(adj)
    return adj


def left_adjoint(F: ModuleFunctor) -> AdjunctionData:
    """Synthesize E -| F and solve E's coherence from unit naturality."""
    atom = _single_atom(F)
    M, M2 = atom.source, atom.target
    eatom = FunctorAtom(M2, M, _transpose_objs(atom), {},
                        name=f"ladj({atom.name or atom.serial})")
    E = ModuleFunctor(M2, M, (eatom,))
    unit = _coordinate_unit(E, F)
    counit = _coordinate_counit(F, E)
    C2 = M2.base
    for x in range(C2.n):
        xobj = ObjectExpr.simple(C2.n, x)
        for n in range(M2.nm):
            nobj = M2.msimple_obj(n)
            En = eatom.objs[n]
            src = eatom.obj(M2.act_obj(xobj, nobj))
            tgt = M.act_obj(xobj, En)
            idx = Morphism.identity(xobj)
            pre = unit.component_at(M2.act_obj(xobj, nobj))
            rhs = M2.act_mor(idx, unit.comps[n])
            post = F.coh(xobj, En)

            def apply_fn(u, post=post, pre=pre):
                return post @ _atom_mor(atom, u) @ pre

            try:
                sol, unique = solve_morphism_equation(apply_fn, rhs, src, tgt)
            except ShapeError as exc:
                raise AdjunctionError(f"no adjoint coherence at {(x,n)}: {exc}")
            if not unique:
                raise AdjunctionError(f"adjoint coherence not unique at {(x,n)}")
            if not sol.is_invertible():
                raise AdjunctionError(f"adjoint coherence singular at {(x,n)}")
            eatom.coh[(x, n)] = sol
    adj = AdjunctionData(E, F, unit, counit)
    _check_triangles(adj)
    return adj


def _check_triangles(adj: AdjunctionData) -> None:
    F, G = adj.F, adj.G
    t1 = whisker_outer(F, adj.unit).then(whisker_inner(adj.counit, F))
    if not t1.is_identity():
        raise AdjunctionError("first triangle identity fails")
    t2 = whisker_inner(adj.unit, G).then(whisker_outer(G, adj.counit))
    if not t2.is_identity():
        raise AdjunctionError("second triangle identity fails")


def mate(cell: ChainCell, adjF: AdjunctionData, adjG: AdjunctionData) -> ChainCell:
    """The mate *v: *G => *F of v: F => G across the two adjunctions."""
    if not (cell.F.same_as(adjF.F) and cell.G.same_as(adjG.F)):
        raise ShapeError("mate endpoints do not match the adjunctions")
    sF, sG = adjF.G, adjG.G
    f1 = whisker_inner(adjF.unit, sG)
    f2 = whisker_outer(sF, whisker_inner(cell, sG))
    f3 = whisker_outer(sF, adjG.counit)
    return f1.then(f2).then(f3)


def adjunction_of_composite(adj_outer: AdjunctionData,
                            adj_inner: AdjunctionData) -> AdjunctionData:
    """The composite adjunction for X o Y with *(X o Y) = *Y o *X."""
    X, Y = adj_outer.F, adj_inner.F
    sX, sY = adj_outer.G, adj_inner.G
    comp = Y.then(X)
    dual = sX.then(sY)
    unit = adj_inner.unit.then(
        whisker_outer(sY, whisker_inner(adj_outer.unit, Y))
    )
    counit = whisker_outer(X, whisker_inner(adj_inner.counit, sX)).then(
        adj_outer.counit
    )
    return AdjunctionData(comp, dual, unit, counit)


def transported_adjunction(adj: AdjunctionData, other: ModuleFunctor,
                           iso: ChainCell) -> AdjunctionData:
    """Move an adjunction along an iso 2-cell iso: other => adj.F.

    The right adjoint is unchanged; unit and counit are conjugated, making
    the mate of iso the identity on adj.G by construction.
    """
    G = adj.G
    unit = adj.unit.then(whisker_outer(G, iso.inverse()))
    counit = whisker_inner(iso, G).then(adj.counit)
    return AdjunctionData(other, G, unit, counit)


def dual_composition_iso(adj_outer: AdjunctionData, adj_inner: AdjunctionData,
                         adj_comp: AdjunctionData) -> ChainCell:
    """The canonical iso *(X o Y) => *Y o *X from the three adjunctions.

    adj_comp supplies the chosen duality for the composite; its F must be
    the chain of adj_inner.F followed by adj_outer.F.
    """
    X, Y = adj_outer.F, adj_inner.F
    sX, sY = adj_outer.G, adj_inner.G
    S = adj_comp.G
    if not adj_comp.F.same_as(Y.then(X)):
        raise ShapeError("composite adjunction does not match the factors")
    f3 = whisker_inner(adj_inner.unit, S)
    f2 = whisker_outer(sY, whisker_inner(adj_outer.unit, S.then(Y)))
    f1 = whisker_outer(sX.then(sY), adj_comp.counit)
    return f3.then(f2).then(f1)


# -- functors from module objects ------------------------------------


def build_R(M: ModuleCategory, P: ObjectExpr) -> ModuleFunctor:
    """The module functor z |-> z . P from the regular module to M."""
    from .module_cat import regular_module

    Creg = regular_module(M.base)
    C = M.base
    objs = [M.act_obj(C.simple_obj(z), P) for z in range(C.n)]
    coh = {}
    for x in range(C.n):
        for z in range(C.n):
            blk = M.module_assoc(C.simple_obj(x), C.simple_obj(z), P)
            coh[(x, z)] = blk
    return ModuleFunctor.atomic(Creg, M, objs, coh, name=f"R[{P.mult}]")


def R_mor(M: ModuleCategory, RP: ModuleFunctor, RQ: ModuleFunctor,
          f: Morphism) -> ChainCell:
    """The 2-cell R_f: R_P => R_Q induced by f: P -> Q."""
    C = M.base
    comps = [
        M.act_mor(Morphism.identity(C.simple_obj(z)), f) for z in range(C.n)
    ]
    return ChainCell(RP, RQ, comps)


def point_object(F: ModuleFunctor) -> ObjectExpr:
    """F evaluated at the unit of the regular module."""
    return F.on_simple(F.source.base.unit)


def point_iso(F: ModuleFunctor, R_at_point: ModuleFunctor) -> ChainCell:
    """The canonical iso R_{F(1)} => F with components c_{z,1}^{-1}."""
    C = F.source.base
    comps = []
    for z in range(C.n):
        c = F.coh(C.simple_obj(z), F.source.msimple_obj(C.unit))
        comps.append(c.inverse())
    return ChainCell(R_at_point, F, comps)


# -- direct sums -----------------------------------------------------


def direct_sum_functors(funcs):
    """Sum a list of parallel chains into one atom.

    Returns (L, injections, projections) with coordinate cells
    iota_k: funcs[k] => L and p_k: L => funcs[k].
    """
    M, M2 = funcs[0].source, funcs[0].target
    objs = []
    for m in range(M.nm):
        acc = ObjectExpr.zero(M2.nm)
        for f in funcs:
            acc = acc + f.on_simple(m)
        objs.append(acc)
    atom = FunctorAtom(M, M2, objs, {}, name="sum")
    L = ModuleFunctor(M, M2, (atom,))
    # offsets of each summand inside the flat copy index, per (m, s)
    offs = []
    for m in range(M.nm):
        cur = [0] * M2.nm
        row = []
        for f in funcs:
            row.append(list(cur))
            for s in range(M2.nm):
                cur[s] += f.on_simple(m).mult[s]
        offs.append(row)
    injections = []
    projections = []
    for k, f in enumerate(funcs):
        inj = []
        proj = []
        for m in range(M.nm):
            fm = f.on_simple(m)
            up = Morphism.zero(fm, objs[m])
            for s in range(M2.nm):
                for t in range(fm.mult[s]):
                    up.blocks[s][offs[m][k][s] + t, t] = 1
            inj.append(up)
            down = Morphism(objs[m], fm, [b.transpose() for b in up.blocks])
            proj.append(down)
        injections.append(ChainCell(f, L, inj))
        projections.append(ChainCell(L, f, proj))
    # coherence of the sum: route each summand through its own coherence
    C = M.base
    for x in range(C.n):
        xobj = ObjectExpr.simple(C.n, x)
        for m in range(M.nm):
            P = M.msimple_obj(m)
            XP = M.act_obj(xobj, P)
            total = None
            for k, f in enumerate(funcs):
                term = (
                    M2.act_mor(Morphism.identity(xobj), injections[k].comps[m])
                    @ f.coh(xobj, P)
                    @ projections[k].component_at(XP)
                )
                total = term if total is None else total + term
            atom.coh[(x, m)] = total
    return L, injections, projections


# -- module naturality as a linear space ------------------------------


def modnat_basis(F: ModuleFunctor, G: ModuleFunctor) -> list[ChainCell]:
    """A basis of the space of module natural transformations F => G."""
    M = F.source
    C = M.base
    elem = []
    for m in range(M.nm):
        for b in hom_basis(F.on_simple(m), G.on_simple(m)):
            comps = [
                Morphism.zero(F.on_simple(i), G.on_simple(i))
                for i in range(M.nm)
            ]
            comps[m] = b
            elem.append(ChainCell(F, G, comps))
    if not elem:
        return []
    rows = []
    for x in range(C.n):
        xobj = ObjectExpr.simple(C.n, x)
        for m in range(M.nm):
            P = M.msimple_obj(m)
            XP = M.act_obj(xobj, P)
            cG = G.coh(xobj, P)
            cF = F.coh(xobj, P)
            cols = []
            for cell in elem:
                defect = cG @ cell.component_at(XP) - (
                    F.target.act_mor(Morphism.identity(xobj), cell.comps[m]) @ cF
                )
                cols.append(mor_to_vec(defect))
            block = cols[0]
            for c in cols[1:]:
                block = block.hstack(c)
            rows.append(block)
    big = rows[0]
    for r in rows[1:]:
        big = big.vstack(r)
    kernel = big.kernel_basis()
    out = []
    for v in kernel:
        cell = None
        for i, e in enumerate(elem):
            if not v[i, 0].is_zero():
                t = e.scale(v[i, 0])
                cell = t if cell is None else cell + t
        if cell is None:
            cell = elem[0].scale(0)
        out.append(cell)
    return out

"""Ends of internal-Hom functors and the monoidal center.

In the semisimple setting the end of (m, n) |-> [m, F(n)] is the direct sum
over simples m of [m, F(m)], with coordinate projections. The wedge map at a
composite object places the simple projections diagonally, matching copies of
m in the source argument with the same copies inside F. Universality is
checked two ways: an exact rank condition (the stacked projections are
injective on every hom space) and randomized recovery trials.

Center objects are pairs (V, sigma) with sigma_a: V (x) a -> a (x) V given on
simples and extended to composites blockwise; the hexagon and unit conditions
are verified exactly. Morphism spaces in the center are cut out by linear
conditions, and the tensor product of center objects threads the two
half-braidings through associators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError, TheoremViolation
from .fusion_core import (
    FusionCategory,
    Morphism,
    ObjectExpr,
    hom_basis,
    mor_to_vec,
)
from .functor_cat import ModuleFunctor
from .module_cat import ModuleCategory


class EndData:
    """The end of (m, n) |-> [m, F(n)] over a module category."""

    def __init__(self, M: ModuleCategory, F: ModuleFunctor | None = None):
        if F is None:
            F = ModuleFunctor.identity(M)
        if F.source is not M or F.target is not M:
            raise ShapeError("end needs an endofunctor of the module category")
        self.M = M
        self.F = F
        C = M.base
        self.summands = [
            M.ihom_obj(M.msimple_obj(m), F.on_simple(m)) for m in range(M.nm)
        ]
        mult = [0] * C.n
        offsets = []
        for h in self.summands:
            offsets.append(tuple(mult))
            for a in range(C.n):
                mult[a] += h.mult[a]
        self.obj = ObjectExpr(tuple(mult))
        self.offsets = offsets
        self.projections = []
        self.inclusions = []
        for m in range(M.nm):
            h = self.summands[m]
            down = Morphism.zero(self.obj, h)
            up = Morphism.zero(h, self.obj)
            for a in range(C.n):
                for t in range(h.mult[a]):
                    down.blocks[a][t, offsets[m][a] + t] = 1
                    up.blocks[a][offsets[m][a] + t, t] = 1
            self.projections.append(down)
            self.inclusions.append(up)

    def pi_at(self, P: ObjectExpr) -> Morphism:
        """The wedge map E -> [P, F(P)] at a composite object."""
        M, F, C = self.M, self.F, self.M.base
        FP = F.obj(P)
        tgt = M.ihom_obj(P, FP)
        out = Morphism.zero(self.obj, tgt)
        f_labels = F.labels(P)
        slot_pos = [
            [
                {t: k for k, t in enumerate(lst)}
                for lst in F.simple_labels(m)
            ]
            for m in range(M.nm)
        ]
        for a in range(C.n):
            entries = M.ihom_entries(P, FP, a)
            for row, (m, j, n, k, delta) in enumerate(entries):
                m2, j2, t = f_labels[n][k]
                if m2 != m or j2 != j:
                    continue
                local_row = M.ihom_index(
                    M.msimple_obj(m),
                    F.on_simple(m),
                    a,
                    (m, 0, n, slot_pos[m][n][t], delta),
                )
                pm = self.projections[m].blocks[a]
                for col in range(pm.cols):
                    v = pm[local_row, col]
                    if not v.is_zero():
                        out.blocks[a][row, col] = v
        return out

    def dinaturality_defects(self, f: Morphism) -> bool:
        """Whether the wedge square for f: P -> Q fails."""
        M, F = self.M, self.F
        P, Q = f.source, f.target
        idP = Morphism.identity(P)
        idFQ = Morphism.identity(F.obj(Q))
        route1 = M.ihom_mor(f, idFQ) @ self.pi_at(Q)
        route2 = M.ihom_mor(idP, F.mor(f)) @ self.pi_at(P)
        return route1 != route2


def verify_joint_injectivity(C: FusionCategory, carrier: ObjectExpr,
                             projections) -> None:
    """Exact criterion: the stacked projections are jointly monic."""
    for a in range(C.n):
        stack = None
        for p in projections:
            blk = p.blocks[a]
            stack = blk if stack is None else stack.vstack(blk)
        if carrier.mult[a] and (stack is None or stack.rank() < carrier.mult[a]):
            raise TheoremViolation(
                f"projections are not jointly injective at simple {a}"
            )


def universality_trials(C: FusionCategory, carrier: ObjectExpr, projections,
                        rng, trials: int) -> int:
    """Randomized recovery: a map into the carrier is pinned down uniquely
    by its composites with the projections. Returns the number of trials."""
    done = 0
    for _ in range(trials):
        mult = tuple(rng.randint(0, 2) for _ in range(C.n))
        if sum(mult) == 0:
            mult = tuple(1 if i == C.unit else 0 for i in range(C.n))
        D = ObjectExpr(mult)
        h0 = Morphism.zero(D, carrier)
        for a in range(C.n):
            blk = h0.blocks[a]
            for r in range(blk.rows):
                for c in range(blk.cols):
                    blk[r, c] = blk[r, c] + rng.randint(-3, 3)
        targets = [p @ h0 for p in projections]
        basis = hom_basis(D, carrier)
        if not basis:
            done += 1
            continue
        cols = []
        for b in basis:
            stacked = None
            for p in projections:
                v = mor_to_vec(p @ b)
                stacked = v if stacked is None else stacked.vstack(v)
            cols.append(stacked)
        mat = cols[0]
        for cvec in cols[1:]:
            mat = mat.hstack(cvec)
        rhs = None
        for t in targets:
            v = mor_to_vec(t)
            rhs = v if rhs is None else rhs.vstack(v)
        sol, kernel, unique = mat.solve(rhs)
        if sol is None or not unique:
            raise TheoremViolation("projection family fails universality")
        recovered = None
        for i, b in enumerate(basis):
            term = b.scale(sol[i, 0])
            recovered = term if recovered is None else recovered + term
        if recovered != h0:
            raise TheoremViolation("universality trial recovered a wrong map")
        done += 1
    return done


def verify_end_universal(end: EndData, rng, trials: int = 20) -> dict:
    """Joint injectivity, randomized recovery, and wedge dinaturality."""
    M, C = end.M, end.M.base
    verify_joint_injectivity(C, end.obj, end.projections)
    done = universality_trials(C, end.obj, end.projections, rng, trials)
    wedge = 0
    for _ in range(max(4, trials // 4)):
        pm = tuple(rng.randint(0, 2) for _ in range(M.nm))
        qm = tuple(rng.randint(0, 2) for _ in range(M.nm))
        P, Q = ObjectExpr(pm), ObjectExpr(qm)
        f = Morphism.zero(P, Q)
        for s in range(M.nm):
            blk = f.blocks[s]
            for r in range(blk.rows):
                for c in range(blk.cols):
                    blk[r, c] = blk[r, c] + rng.randint(-2, 2)
        if end.dinaturality_defects(f):
            raise TheoremViolation("end wedge is not dinatural")
        wedge += 1
    return {"recovery_trials": done, "wedge_trials": wedge, "ok": True}


class CenterObject:
    """An object of the monoidal center: carrier plus half-braiding."""

    def __init__(self, C: FusionCategory, obj: ObjectExpr, sigma):
        self.C = C
        self.obj = obj
        self.sigma = list(sigma)
        if len(self.sigma) != C.n:
            raise ShapeError("need one half-braiding block per simple")
        for a, s in enumerate(self.sigma):
            aobj = C.simple_obj(a)
            if s.source.mult != C.tensor_obj(obj, aobj).mult or \
               s.target.mult != C.tensor_obj(aobj, obj).mult:
                raise ShapeError(f"half-braiding block {a} has wrong endpoints")

    def sigma_at(self, X: ObjectExpr) -> Morphism:
        """Extend the half-braiding to a composite second argument."""
        C, V = self.C, self.obj
        src = C.tensor_obj(V, X)
        tgt = C.tensor_obj(X, V)
        out = Morphism.zero(src, tgt)
        for c in range(C.n):
            entries = C.tensor_entries(V, X, c)
            for col, (a, i, b, j, mu) in enumerate(entries):
                bobj = C.simple_obj(b)
                scol = C.tensor_index(V, bobj, c, (a, i, b, 0, mu))
                blk = self.sigma[b].blocks[c]
                rows = C.tensor_entries(bobj, V, c)
                for r in range(blk.rows):
                    v = blk[r, scol]
                    if v.is_zero():
                        continue
                    _, _, a2, i2, mu2 = rows[r]
                    row = C.tensor_index(X, V, c, (b, j, a2, i2, mu2))
                    out.blocks[c][row, col] = out.blocks[c][row, col] + v
        return out

    def validate(self) -> list:
        """Hexagon on all simple pairs plus the unit condition."""
        C, V = self.C, self.obj
        bad = []
        if not self.sigma[C.unit].is_identity():
            bad.append(("unit",))
        for a in range(C.n):
            A = C.simple_obj(a)
            for b in range(C.n):
                B = C.simple_obj(b)
                Z = C.tensor_obj(A, B)
                idA = Morphism.identity(A)
                idB = Morphism.identity(B)
                route1 = self.sigma_at(Z) @ C.associator(V, A, B)
                route2 = (
                    C.associator_inv(A, B, V)
                    @ C.tensor_mor(idA, self.sigma[b])
                    @ C.associator(A, V, B)
                    @ C.tensor_mor(self.sigma[a], idB)
                )
                if route1 != route2:
                    bad.append(("hexagon", a, b))
        return bad


def center_hom(A: CenterObject, B: CenterObject) -> list[Morphism]:
    """A basis of the morphisms V_A -> V_B commuting with the braidings."""
    C = A.C
    basis = hom_basis(A.obj, B.obj)
    if not basis:
        return []
    rows = []
    for a in range(C.n):
        aobj = C.simple_obj(a)
        ida = Morphism.identity(aobj)
        cols = []
        for f in basis:
            defect = C.tensor_mor(ida, f) @ A.sigma[a] - (
                B.sigma[a] @ C.tensor_mor(f, ida)
            )
            cols.append(mor_to_vec(defect))
        blk = cols[0]
        for cvec in cols[1:]:
            blk = blk.hstack(cvec)
        rows.append(blk)
    big = rows[0]
    for r in rows[1:]:
        big = big.vstack(r)
    out = []
    for v in big.kernel_basis():
        f = None
        for i, b in enumerate(basis):
            if not v[i, 0].is_zero():
                t = b.scale(v[i, 0])
                f = t if f is None else f + t
        if f is None:
            f = basis[0].scale(0)
        out.append(f)
    return out


def center_tensor(A: CenterObject, B: CenterObject) -> CenterObject:
    """Tensor product in the center."""
    C = A.C
    VA, VB = A.obj, B.obj
    V = C.tensor_obj(VA, VB)
    sigma = []
    for a in range(C.n):
        aobj = C.simple_obj(a)
        idA = Morphism.identity(VA)
        idB = Morphism.identity(VB)
        s = (
            C.associator(aobj, VA, VB)
            @ C.tensor_mor(A.sigma[a], idB)
            @ C.associator_inv(VA, aobj, VB)
            @ C.tensor_mor(idA, B.sigma[a])
            @ C.associator(VA, VB, aobj)
        )
        sigma.append(s)
    return CenterObject(C, V, sigma)


@dataclass
class CenterAlgebra:
    """An algebra object in the center."""

    carrier: CenterObject
    mult: Morphism
    unit: Morphism


def validate_center_algebra(alg: CenterAlgebra) -> list:
    """Associativity, unitality, and centrality of mult and unit."""
    A = alg.carrier
    C = A.C
    V = A.obj
    m, u = alg.mult, alg.unit
    bad = []
    idV = Morphism.identity(V)
    if m.source.mult != C.tensor_obj(V, V).mult or m.target.mult != V.mult:
        raise ShapeError("multiplication has wrong endpoints")
    if u.source.mult != C.unit_obj().mult or u.target.mult != V.mult:
        raise ShapeError("unit has wrong endpoints")
    lhs = m @ C.tensor_mor(m, idV)
    rhs = m @ C.tensor_mor(idV, m) @ C.associator(V, V, V)
    if lhs != rhs:
        bad.append(("assoc",))
    left_unit = m @ C.tensor_mor(u, idV)
    if not left_unit.is_identity():
        bad.append(("left-unit",))
    right_unit = m @ C.tensor_mor(idV, u)
    if not right_unit.is_identity():
        bad.append(("right-unit",))
    VV = center_tensor(A, A)
    for a in range(C.n):
        aobj = C.simple_obj(a)
        ida = Morphism.identity(aobj)
        lhs = A.sigma[a] @ C.tensor_mor(m, ida)
        rhs = C.tensor_mor(ida, m) @ VV.sigma[a]
        if lhs != rhs:
            bad.append(("mult-central", a))
        lhs = A.sigma[a] @ C.tensor_mor(u, ida)
        rhs = C.tensor_mor(ida, u)
        if lhs != rhs:
            bad.append(("unit-central", a))
    return bad

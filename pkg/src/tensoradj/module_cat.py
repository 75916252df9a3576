"""Semisimple module categories over a fusion category.

A module category is given by action multiplicities A[x][m][n] (copies of
module simple n inside x acting on module simple m) and module associativity
blocks keyed (x, y, m, n), mapping ((x y) m -> n) action trees (e, mu, alpha)
to (x (y m) -> n) trees (n'', beta, gamma), both lex-ordered; missing keys
mean the identity. Module objects are multiplicity vectors over the module
simples, and morphisms reuse the blockwise Morphism container.

This file also provides internal Homs with canonical composite bases, the
hom/action adjunction (phi/psi), evaluation, coevaluation, composition, and
the two canonical maps relating internal Homs to the base-category action
(one solved from evaluation naturality, one built from rigidity).
"""

from __future__ import annotations

from .errors import IndecomposabilityError, ShapeError, TheoremViolation
from .exact_scalar import ExactMatrix
from .fusion_core import FusionCategory, Morphism, ObjectExpr, solve_morphism_equation


class ModuleCategory:
    def __init__(self, base: FusionCategory, msimples, A, Mblocks=None, name=""):
        self.base = base
        self.msimples = list(msimples)
        self.A = A
        self.Mblocks = dict(Mblocks or {})
        self.name = name
        self._tree_cache: dict = {}
        self._act_cache: dict = {}
        self._ihom_cache: dict = {}
        self._massoc_cache: dict = {}

    # -- basic structure ----------------------------------------------

    @property
    def nm(self) -> int:
        return len(self.msimples)

    def msimple_obj(self, m: int) -> ObjectExpr:
        return ObjectExpr.simple(self.nm, m)

    # -- action trees and M-blocks ------------------------------------

    def left_mtrees(self, x, y, m, n):
        """Basis (e, mu, alpha) of ((x y) m -> n) action trees."""
        key = ("L", x, y, m, n)
        out = self._tree_cache.get(key)
        if out is None:
            out = []
            for e in range(self.base.n):
                for mu in range(self.base.N[x][y][e]):
                    for alpha in range(self.A[e][m][n]):
                        out.append((e, mu, alpha))
            self._tree_cache[key] = out
        return out

    def left_mtree_index(self, x, y, m, n) -> dict:
        key = ("LI", x, y, m, n)
        out = self._tree_cache.get(key)
        if out is None:
            out = {t: k for k, t in enumerate(self.left_mtrees(x, y, m, n))}
            self._tree_cache[key] = out
        return out

    def right_mtrees(self, x, y, m, n):
        """Basis (n2, beta, gamma) of (x (y m) -> n) action trees."""
        key = ("R", x, y, m, n)
        out = self._tree_cache.get(key)
        if out is None:
            out = []
            for n2 in range(self.nm):
                for beta in range(self.A[y][m][n2]):
                    for gamma in range(self.A[x][n2][n]):
                        out.append((n2, beta, gamma))
            self._tree_cache[key] = out
        return out

    def m_block(self, x, y, m, n) -> ExactMatrix:
        key = (x, y, m, n)
        if key in self.Mblocks:
            return self.Mblocks[key]
        k = len(self.left_mtrees(x, y, m, n))
        k2 = len(self.right_mtrees(x, y, m, n))
        if k != k2:
            raise ShapeError(f"action tree count mismatch at {key}: {k} vs {k2}")
        return ExactMatrix.identity(k)

    # -- the action on objects and morphisms --------------------------

    def _act_data(self, Xm, Pm):
        key = (Xm, Pm)
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached
        entries = [[] for _ in range(self.nm)]
        for x, i in ObjectExpr(Xm).copies():
            for m, j in ObjectExpr(Pm).copies():
                for n in range(self.nm):
                    for alpha in range(self.A[x][m][n]):
                        entries[n].append((x, i, m, j, alpha))
        for n in range(self.nm):
            entries[n].sort()
        index = [{ent: k for k, ent in enumerate(entries[n])} for n in range(self.nm)]
        obj = ObjectExpr(tuple(len(entries[n]) for n in range(self.nm)))
        cached = (obj, entries, index)
        self._act_cache[key] = cached
        return cached

    def act_obj(self, X: ObjectExpr, P: ObjectExpr) -> ObjectExpr:
        return self._act_data(X.mult, P.mult)[0]

    def act_entries(self, X, P, n: int):
        return self._act_data(X.mult, P.mult)[1][n]

    def act_index(self, X, P, n: int, entry) -> int:
        return self._act_data(X.mult, P.mult)[2][n][entry]

    def act_mor(self, f: Morphism, g: Morphism) -> Morphism:
        """f acting on g: act(f.source, g.source) -> act(f.target, g.target)."""
        src, s_entries, _ = self._act_data(f.source.mult, g.source.mult)
        tgt, _, t_index = self._act_data(f.target.mult, g.target.mult)
        blocks = []
        for n in range(self.nm):
            m = ExactMatrix.zeros(tgt.mult[n], src.mult[n])
            for col, (x, i, mm, j, alpha) in enumerate(s_entries[n]):
                fx = f.blocks[x]
                gm = g.blocks[mm]
                for i2 in range(fx.rows):
                    a = fx[i2, i]
                    if a.is_zero():
                        continue
                    for j2 in range(gm.rows):
                        b = gm[j2, j]
                        if b.is_zero():
                            continue
                        row = t_index[n][(x, i2, mm, j2, alpha)]
                        m[row, col] = a * b
            blocks.append(m)
        return Morphism(src, tgt, blocks)

    def module_assoc(self, X: ObjectExpr, Y: ObjectExpr, P: ObjectExpr) -> Morphism:
        """m_{X,Y,P}: (X (x) Y) . P -> X . (Y . P) in canonical bases."""
        key = (X.mult, Y.mult, P.mult)
        cached = self._massoc_cache.get(key)
        if cached is not None:
            return cached
        C = self.base
        XY, xy_entries, _ = C._tensor_data(X.mult, Y.mult)
        YP, _, yp_index = self._act_data(Y.mult, P.mult)
        src, s_entries, _ = self._act_data(XY.mult, P.mult)
        tgt, _, t_index = self._act_data(X.mult, YP.mult)
        blocks = []
        for n in range(self.nm):
            m = ExactMatrix.zeros(tgt.mult[n], src.mult[n])
            for col, (e, p, mm, j, alpha) in enumerate(s_entries[n]):
                x, i, y, j2, mu = xy_entries[e][p]
                blk = self.m_block(x, y, mm, n)
                bcol = self.left_mtree_index(x, y, mm, n)[(e, mu, alpha)]
                for brow, (n2, beta, gamma) in enumerate(
                    self.right_mtrees(x, y, mm, n)
                ):
                    coeff = blk[brow, bcol]
                    if coeff.is_zero():
                        continue
                    q = yp_index[n2][(y, j2, mm, j, beta)]
                    row = t_index[n][(x, i, n2, q, gamma)]
                    m[row, col] = m[row, col] + coeff
            blocks.append(m)
        out = Morphism(src, tgt, blocks)
        self._massoc_cache[key] = out
        return out

    # -- validation ---------------------------------------------------

    def validate(self) -> list[str]:
        bad = []
        C = self.base
        u = C.unit
        for m in range(self.nm):
            for n in range(self.nm):
                if self.A[u][m][n] != (1 if m == n else 0):
                    bad.append(f"unit action broken at ({m},{n})")
        for x in range(C.n):
            for y in range(C.n):
                for m in range(self.nm):
                    for n in range(self.nm):
                        lt = len(self.left_mtrees(x, y, m, n))
                        rt = len(self.right_mtrees(x, y, m, n))
                        if lt != rt:
                            bad.append(
                                f"action multiplicities not associative at {(x,y,m,n)}"
                            )
                            continue
                        if lt and u in (x, y):
                            if not self.m_block(x, y, m, n).is_identity():
                                bad.append(
                                    f"unit M-block not identity at {(x,y,m,n)}"
                                )
                        if lt:
                            try:
                                self.m_block(x, y, m, n).inverse()
                            except ShapeError:
                                bad.append(f"M-block singular at {(x,y,m,n)}")
        if bad:
            return bad
        for x in range(C.n):
            for y in range(C.n):
                for z in range(C.n):
                    for m in range(self.nm):
                        if not self._mixed_pentagon_holds(x, y, z, m):
                            bad.append(f"mixed pentagon fails at {(x,y,z,m)}")
        return bad

    def _mixed_pentagon_holds(self, x, y, z, m) -> bool:
        C = self.base
        X, Y, Z = C.simple_obj(x), C.simple_obj(y), C.simple_obj(z)
        P = self.msimple_obj(m)
        XY = C.tensor_obj(X, Y)
        YZ = C.tensor_obj(Y, Z)
        ZP = self.act_obj(Z, P)
        lhs = self.module_assoc(X, Y, ZP) @ self.module_assoc(XY, Z, P)
        rhs = (
            self.act_mor(Morphism.identity(X), self.module_assoc(Y, Z, P))
            @ self.module_assoc(X, YZ, P)
            @ self.act_mor(C.associator(X, Y, Z), Morphism.identity(P))
        )
        return lhs == rhs

    def is_indecomposable(self) -> bool:
        """Connectivity of the action graph on module simples."""
        if self.nm == 0:
            return False
        seen = {0}
        frontier = [0]
        while frontier:
            m = frontier.pop()
            for n in range(self.nm):
                if n in seen:
                    continue
                linked = any(
                    self.A[x][m][n] or self.A[x][n][m] for x in range(self.base.n)
                )
                if linked:
                    seen.add(n)
                    frontier.append(n)
        return len(seen) == self.nm

    def require_indecomposable(self) -> None:
        if not self.is_indecomposable():
            raise IndecomposabilityError(
                f"module category {self.name!r} is decomposable"
            )

    # -- internal Hom -------------------------------------------------

    def _ihom_data(self, Pm, Qm):
        key = (Pm, Qm)
        cached = self._ihom_cache.get(key)
        if cached is not None:
            return cached
        nS = self.base.n
        entries = [[] for _ in range(nS)]
        for m, j in ObjectExpr(Pm).copies():
            for n, k in ObjectExpr(Qm).copies():
                for a in range(nS):
                    for delta in range(self.A[a][m][n]):
                        entries[a].append((m, j, n, k, delta))
        for a in range(nS):
            entries[a].sort()
        index = [{ent: q for q, ent in enumerate(entries[a])} for a in range(nS)]
        obj = ObjectExpr(tuple(len(entries[a]) for a in range(nS)))
        cached = (obj, entries, index)
        self._ihom_cache[key] = cached
        return cached

    def ihom_obj(self, P: ObjectExpr, Q: ObjectExpr) -> ObjectExpr:
        """The internal Hom Hom(P, Q) as an object of the base category."""
        return self._ihom_data(P.mult, Q.mult)[0]

    def ihom_entries(self, P, Q, a: int):
        return self._ihom_data(P.mult, Q.mult)[1][a]

    def ihom_index(self, P, Q, a: int, entry) -> int:
        return self._ihom_data(P.mult, Q.mult)[2][a][entry]

    def ihom_mor(self, f: Morphism, g: Morphism) -> Morphism:
        """Hom(f, g): Hom(P, Q) -> Hom(P', Q') for f: P' -> P, g: Q -> Q'."""
        src, s_entries, _ = self._ihom_data(f.target.mult, g.source.mult)
        tgt, _, t_index = self._ihom_data(f.source.mult, g.target.mult)
        blocks = []
        for a in range(self.base.n):
            m = ExactMatrix.zeros(tgt.mult[a], src.mult[a])
            for col, (mm, j, nn, k, delta) in enumerate(s_entries[a]):
                fm = f.blocks[mm]
                gn = g.blocks[nn]
                for j2 in range(fm.cols):
                    x = fm[j, j2]
                    if x.is_zero():
                        continue
                    for k2 in range(gn.rows):
                        y = gn[k2, k]
                        if y.is_zero():
                            continue
                        row = t_index[a][(mm, j2, nn, k2, delta)]
                        m[row, col] = m[row, col] + x * y
            blocks.append(m)
        return Morphism(src, tgt, blocks)

    # -- the adjunction Hom(X . P, Q) = Hom(X, Hom(P, Q)) --------------

    def phi(self, X: ObjectExpr, P: ObjectExpr, Q: ObjectExpr,
            alpha: Morphism) -> Morphism:
        """Turn alpha: X -> Hom(P, Q) into X . P -> Q."""
        src, s_entries, _ = self._act_data(X.mult, P.mult)
        blocks = []
        for n0 in range(self.nm):
            m = ExactMatrix.zeros(Q.mult[n0], src.mult[n0])
            for col, (x, i, mm, j, alpha0) in enumerate(s_entries[n0]):
                ax = alpha.blocks[x]
                for k in range(Q.mult[n0]):
                    row_ih = self.ihom_index(P, Q, x, (mm, j, n0, k, alpha0))
                    m[k, col] = ax[row_ih, i]
            blocks.append(m)
        return Morphism(src, Q, blocks)

    def psi(self, X: ObjectExpr, P: ObjectExpr, Q: ObjectExpr,
            beta: Morphism) -> Morphism:
        """Turn beta: X . P -> Q into X -> Hom(P, Q)."""
        H = self.ihom_obj(P, Q)
        blocks = []
        for x in range(self.base.n):
            m = ExactMatrix.zeros(H.mult[x], X.mult[x])
            for q, (mm, j, n0, k, delta) in enumerate(self.ihom_entries(P, Q, x)):
                for i in range(X.mult[x]):
                    col_act = self.act_index(X, P, n0, (x, i, mm, j, delta))
                    m[q, i] = beta.blocks[n0][k, col_act]
            blocks.append(m)
        return Morphism(X, H, blocks)

    def ev_module(self, P: ObjectExpr, Q: ObjectExpr) -> Morphism:
        """Evaluation Hom(P, Q) . P -> Q."""
        H = self.ihom_obj(P, Q)
        return self.phi(H, P, Q, Morphism.identity(H))

    def coev_module(self, X: ObjectExpr, P: ObjectExpr) -> Morphism:
        """Coevaluation X -> Hom(P, X . P)."""
        XP = self.act_obj(X, P)
        return self.psi(X, P, XP, Morphism.identity(XP))

    def comp_module(self, P: ObjectExpr) -> Morphism:
        """Internal composition Hom(P,P) (x) Hom(P,P) -> Hom(P,P)."""
        C = self.base
        H = self.ihom_obj(P, P)
        HH = C.tensor_obj(H, H)
        ev = self.ev_module(P, P)
        inner = (
            self.act_mor(Morphism.identity(H), ev)
            @ self.module_assoc(H, H, P)
        )
        return self.psi(HH, P, P, ev @ inner)

    # -- canonical maps into the base action --------------------------

    def frak_a(self, X: ObjectExpr, P: ObjectExpr, Q: ObjectExpr) -> Morphism:
        """The canonical map Hom(P, X . Q) -> X (x) Hom(P, Q).

        Defined as the unique solution of evaluation naturality:
        (id_X . ev) o m_{X,H,P} o (u . id_P) = ev with H = Hom(P, Q).
        """
        C = self.base
        H = self.ihom_obj(P, Q)
        XQ = self.act_obj(X, Q)
        src = self.ihom_obj(P, XQ)
        tgt = C.tensor_obj(X, H)
        idP = Morphism.identity(P)
        ev_pq = self.ev_module(P, Q)
        massoc = self.module_assoc(X, H, P)
        idX = Morphism.identity(X)
        rhs = self.ev_module(P, XQ)

        def apply_fn(u):
            return self.act_mor(idX, ev_pq) @ massoc @ self.act_mor(u, idP)

        sol, unique = solve_morphism_equation(apply_fn, rhs, src, tgt)
        if not unique:
            raise TheoremViolation(
                "evaluation naturality does not determine the canonical map"
            )
        return sol

    def frak_b1(self, X: ObjectExpr, P: ObjectExpr, Q: ObjectExpr) -> Morphism:
        """The canonical map Hom(X . P, Q) -> Hom(P, Q) (x) X*."""
        C = self.base
        XP = self.act_obj(X, P)
        Z = self.ihom_obj(XP, Q)
        Xs = C.dual_obj(X)
        ZX = C.tensor_obj(Z, X)
        inner = self.ev_module(XP, Q) @ self.module_assoc(Z, X, P)
        arg = self.psi(ZX, P, Q, inner)
        return (
            C.tensor_mor(arg, Morphism.identity(Xs))
            @ C.associator_inv(Z, X, Xs)
            @ C.tensor_mor(Morphism.identity(Z), C.coev_right(X))
        )

    def frak_b(self, X: ObjectExpr, P: ObjectExpr, Q: ObjectExpr) -> Morphism:
        """The canonical map Hom(X . P, Q) (x) X -> Hom(P, Q)."""
        C = self.base
        H = self.ihom_obj(P, Q)
        Xs = C.dual_obj(X)
        b1 = self.frak_b1(X, P, Q)
        return (
            C.tensor_mor(Morphism.identity(H), C.ev_right(X))
            @ C.associator(H, Xs, X)
            @ C.tensor_mor(b1, Morphism.identity(X))
        )


def regular_module(C: FusionCategory) -> ModuleCategory:
    """C as a left module category over itself.

    Cached per category so repeated calls hand back the same instance;
    functor plumbing compares categories by identity.
    """
    cached = getattr(C, "_regular_module", None)
    if cached is not None:
        return cached
    A = C.N
    Mblocks = {}
    for key, blk in C.F.items():
        Mblocks[key] = blk
    M = ModuleCategory(C, list(C.simples), A, Mblocks, name=(C.name or "C") + ":regular")
    C._regular_module = M
    return M

"""Exact arithmetic in cyclotomic fields Q(zeta_n) and exact linear algebra.

Scalars are represented on the power basis 1, z, ..., z^(phi(n)-1) of
Q(zeta_n), with coordinates reduced modulo the n-th cyclotomic polynomial.
Coordinates are stdlib Fractions, so everything is exact and hashable-free
of floating point. Conductors up to MAX_CONDUCTOR are supported; mixed
conductors are unified through zeta_m = zeta_n^(n/m) for m | n.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, ShapeError, UnsupportedConductor

MAX_CONDUCTOR = 60

_FR_ZERO = Fraction(0)
_ZERO_CACHE: dict = {}
_ONE_CACHE: dict = {}


_PHI_CACHE: dict[int, int] = {}


def euler_phi(n: int) -> int:
    got = _PHI_CACHE.get(n)
    if got is None:
        got = sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
        _PHI_CACHE[n] = got
    return got


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    # den must be nonzero; standard long division over Q
    num = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    inv_lead = 1 / den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] * inv_lead
        if c:
            q[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return _poly_trim(q), _poly_trim(num)


_CYCLO_CACHE: dict[int, list[Fraction]] = {}


def cyclotomic_polynomial(n: int) -> list[Fraction]:
    """Coefficient list (low to high) of the n-th cyclotomic polynomial."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    den = [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    q, r = _poly_divmod(num, den)
    if r:
        raise ArithmeticError("cyclotomic division left a remainder")
    _CYCLO_CACHE[n] = q
    return q


def _check_conductor(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_CONDUCTOR:
        raise UnsupportedConductor(f"conductor {n!r} outside 1..{MAX_CONDUCTOR}")


def _reduce_mod_cyclo(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta_n (arbitrary degree) to the power basis."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    # first fold exponents mod n (zeta_n^n = 1), then divide by Phi_n
    folded = [Fraction(0)] * n if n > 1 else [Fraction(0)]
    for e, c in enumerate(coeffs):
        if c:
            folded[e % n] += c
    _, rem = _poly_divmod(_poly_trim(folded), phi)
    rem = rem + [Fraction(0)] * (deg - len(rem))
    return tuple(rem)


class ExactScalar:
    """An element of Q(zeta_n) in reduced power-basis form."""

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords):
        _check_conductor(conductor)
        deg = euler_phi(conductor)
        coords = [Fraction(c) for c in coords]
        if len(coords) != deg:
            # accept raw polynomials of any length and reduce
            coords = list(_reduce_mod_cyclo(coords, conductor))
        self.conductor = conductor
        self.coords = tuple(coords)

    # -- constructors -------------------------------------------------

    @staticmethod
    def _make(conductor: int, coords) -> "ExactScalar":
        """Internal fast path: coords must already be a reduced tuple of
        Fractions of the right length."""
        out = object.__new__(ExactScalar)
        out.conductor = conductor
        out.coords = tuple(coords)
        return out

    @staticmethod
    def from_rational(q, conductor: int = 1) -> "ExactScalar":
        _check_conductor(conductor)
        deg = euler_phi(conductor)
        return ExactScalar._make(
            conductor, (Fraction(q),) + (_FR_ZERO,) * (deg - 1)
        )

    @staticmethod
    def zero(conductor: int = 1) -> "ExactScalar":
        got = _ZERO_CACHE.get(conductor)
        if got is None:
            got = ExactScalar.from_rational(0, conductor)
            _ZERO_CACHE[conductor] = got
        return got

    @staticmethod
    def one(conductor: int = 1) -> "ExactScalar":
        got = _ONE_CACHE.get(conductor)
        if got is None:
            got = ExactScalar.from_rational(1, conductor)
            _ONE_CACHE[conductor] = got
        return got

    @staticmethod
    def zeta(n: int) -> "ExactScalar":
        """A primitive n-th root of unity, as a generator of Q(zeta_n)."""
        _check_conductor(n)
        if n == 1:
            return ExactScalar.one(1)
        return ExactScalar(n, _reduce_mod_cyclo([Fraction(0), Fraction(1)], n))

    # -- conductor handling -------------------------------------------

    def embed(self, n: int) -> "ExactScalar":
        """Rewrite this scalar in Q(zeta_n); requires conductor | n."""
        _check_conductor(n)
        if n == self.conductor:
            return self
        if n % self.conductor != 0:
            raise UnsupportedConductor(
                f"cannot embed conductor {self.conductor} into {n}"
            )
        step = n // self.conductor
        stretched = [_FR_ZERO] * (step * (len(self.coords) - 1) + 1)
        for e, c in enumerate(self.coords):
            stretched[e * step] = c
        return ExactScalar._make(n, _reduce_mod_cyclo(stretched, n))

    @staticmethod
    def unify(a: "ExactScalar", b: "ExactScalar"):
        n = a.conductor * b.conductor // gcd(a.conductor, b.conductor)
        _check_conductor(n)
        return a.embed(n), b.embed(n)

    def try_demote(self) -> "ExactScalar":
        """Return an equal scalar with conductor 1 when the value is rational."""
        if self.conductor == 1:
            return self
        if all(c == 0 for c in self.coords[1:]):
            return ExactScalar._make(1, (self.coords[0],))
        return self

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        return ExactScalar.from_rational(x, 1)

    def __add__(self, other):
        other = self._coerce(other)
        if self.conductor == other.conductor:
            a, b = self, other
        else:
            a, b = ExactScalar.unify(self, other)
        return ExactScalar._make(
            a.conductor, tuple(x + y for x, y in zip(a.coords, b.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._make(self.conductor, tuple(-c for c in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.conductor == other.conductor:
            a, b = self, other
        else:
            a, b = ExactScalar.unify(self, other)
        if a.conductor == 1:
            return ExactScalar._make(1, (a.coords[0] * b.coords[0],))
        prod = _poly_mul(list(a.coords), list(b.coords))
        return ExactScalar._make(
            a.conductor, _reduce_mod_cyclo(prod, a.conductor)
        )

    __rmul__ = __mul__

    def inv(self) -> "ExactScalar":
        """Multiplicative inverse via extended Euclid against Phi_n."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.conductor
        if n == 1:
            return ExactScalar._make(1, (1 / self.coords[0],))
        phi = cyclotomic_polynomial(n)
        # extended euclid: find u with u * self = 1 (mod Phi_n)
        r0, r1 = phi, _poly_trim(list(self.coords))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r2 = _poly_divmod(r0, r1)
            s2 = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1 = r1, r2
            s0, s1 = s1, s2
        # r0 is the gcd, a nonzero constant since Phi_n is irreducible
        if len(r0) != 1:
            raise DivisionByZero("scalar not invertible (unexpected gcd)")
        c = r0[0]
        u = [x / c for x in s0]
        return ExactScalar._make(n, _reduce_mod_cyclo(u, n))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ExactScalar.one(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- predicates, equality -----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and all(c == 0 for c in self.coords[1:])

    def is_rational(self) -> bool:
        return self.conductor == 1 or all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ShapeError("scalar is not rational")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.from_rational(other, 1)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coords == other.coords
        a, b = ExactScalar.unify(self, other)
        return a.coords == b.coords

    def __hash__(self):
        d = self.try_demote()
        if d.conductor == 1:
            return hash(d.coords[0])
        return hash((d.conductor, d.coords))

    def __repr__(self):
        if self.is_rational():
            return f"ExactScalar({self.coords[0]})"
        terms = []
        for e, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}*z{self.conductor}^{e}")
        return "ExactScalar(" + " + ".join(terms) + ")"

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coords": [str(c) for c in self.coords],
        }

    @staticmethod
    def from_json(data: dict) -> "ExactScalar":
        try:
            n = data["conductor"]
            coords = [Fraction(s) for s in data["coords"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"bad scalar serialization: {exc}") from exc
        if not isinstance(n, int) or n < 1:
            raise ShapeError("bad scalar conductor")
        _check_conductor(n)
        if len(coords) != euler_phi(n):
            raise ShapeError("scalar coords length does not match conductor")
        return ExactScalar(n, coords)


ZERO = ExactScalar.zero()
ONE = ExactScalar.one()


def sc(x) -> ExactScalar:
    """Coerce ints/Fractions/ExactScalars to ExactScalar."""
    return ExactScalar._coerce(x)


class ExactMatrix:
    """Dense matrix of ExactScalars sharing a single conductor."""

    __slots__ = ("rows", "cols", "conductor", "data")

    def __init__(self, rows: int, cols: int, entries=None, conductor: int = 1):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.conductor = conductor
            z = ExactScalar.zero(conductor)
            self.data = [[z] * cols for _ in range(rows)]
            return
        flat = []
        for r in entries:
            row = [sc(x) for x in r]
            if len(row) != cols:
                raise ShapeError("ragged matrix rows")
            flat.append(row)
        if len(flat) != rows:
            raise ShapeError("row count mismatch")
        n = conductor
        for row in flat:
            for x in row:
                n = n * x.conductor // gcd(n, x.conductor)
        _check_conductor(n)
        self.conductor = n
        self.data = [[x.embed(n) for x in row] for row in flat]

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        m = ExactMatrix(n, n)
        for i in range(n):
            m.data[i][i] = ExactScalar.one()
        return m

    @staticmethod
    def zeros(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(rows, cols)

    @staticmethod
    def from_rows(entries) -> "ExactMatrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return ExactMatrix(rows, cols, entries)

    def copy(self) -> "ExactMatrix":
        m = ExactMatrix(self.rows, self.cols)
        m.conductor = self.conductor
        m.data = [list(row) for row in self.data]
        return m

    # -- access -------------------------------------------------------

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]

    def __setitem__(self, rc, value):
        r, c = rc
        v = sc(value)
        if v.conductor != self.conductor:
            n = self.conductor * v.conductor // gcd(self.conductor, v.conductor)
            if n != self.conductor:
                self._promote(n)
            v = v.embed(self.conductor)
        self.data[r][c] = v

    def _promote(self, n: int) -> None:
        _check_conductor(n)
        self.data = [[x.embed(n) for x in row] for row in self.data]
        self.conductor = n

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError("matrix addition shape mismatch")
        return ExactMatrix(
            self.rows,
            self.cols,
            [
                [self.data[r][c] + other.data[r][c] for c in range(self.cols)]
                for r in range(self.rows)
            ],
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, k) -> "ExactMatrix":
        k = sc(k)
        return ExactMatrix(
            self.rows,
            self.cols,
            [[k * x for x in row] for row in self.data],
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeError(
                f"matmul shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        a, b = self, other
        n = a.conductor * b.conductor // gcd(a.conductor, b.conductor)
        if a.conductor != n:
            a = a.copy()
            a._promote(n)
        if b.conductor != n:
            b = b.copy()
            b._promote(n)
        out = ExactMatrix(a.rows, b.cols, conductor=n)
        bt = b.transpose()
        for r in range(a.rows):
            arow = a.data[r]
            for c in range(b.cols):
                bcol = bt.data[c]
                acc = ExactScalar.zero(n)
                for k in range(a.cols):
                    x = arow[k]
                    if not x.is_zero():
                        y = bcol[k]
                        if not y.is_zero():
                            acc = acc + x * y
                out.data[r][c] = acc
        return out

    def transpose(self) -> "ExactMatrix":
        out = ExactMatrix(self.cols, self.rows, conductor=self.conductor)
        for r in range(self.rows):
            for c in range(self.cols):
                out.data[c][r] = self.data[r][c]
        return out

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ShapeError("hstack row mismatch")
        return ExactMatrix(
            self.rows,
            self.cols + other.cols,
            [self.data[r] + other.data[r] for r in range(self.rows)],
        )

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ShapeError("vstack col mismatch")
        return ExactMatrix(
            self.rows + other.rows, self.cols, self.data + other.data
        )

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        for r in range(self.rows):
            for c in range(self.cols):
                if self.data[r][c] != other.data[r][c]:
                    return False
        return True

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.data for x in row)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return self == ExactMatrix.identity(self.rows)

    def __repr__(self):
        body = "; ".join(
            " ".join(repr(x)[len("ExactScalar(") : -1] for x in row)
            for row in self.data
        )
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"

    # -- elimination --------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot columns)."""
        m = self.copy()
        pivots = []
        row = 0
        for col in range(m.cols):
            pivot = None
            for r in range(row, m.rows):
                if not m.data[r][col].is_zero():
                    pivot = r
                    break
            if pivot is None:
                continue
            m.data[row], m.data[pivot] = m.data[pivot], m.data[row]
            inv = m.data[row][col].inv()
            m.data[row] = [inv * x for x in m.data[row]]
            for r in range(m.rows):
                if r != row and not m.data[r][col].is_zero():
                    factor = m.data[r][col]
                    m.data[r] = [
                        x - factor * y for x, y in zip(m.data[r], m.data[row])
                    ]
            pivots.append(col)
            row += 1
            if row == m.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list["ExactMatrix"]:
        """Basis (column vectors) of the right null space."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = ExactMatrix(self.cols, 1)
            v[f, 0] = ExactScalar.one()
            for i, p in enumerate(pivots):
                v[p, 0] = -red.data[i][f]
            basis.append(v)
        return basis

    def solve(self, b: "ExactMatrix"):
        """Solve self @ x = b.

        Returns (particular, kernel, unique). particular is None when the
        system is inconsistent; kernel is a basis of homogeneous solutions.
        """
        if b.rows != self.rows:
            raise ShapeError("rhs row mismatch")
        aug = self.hstack(b)
        red, pivots = aug.rref()
        ncols = self.cols
        # inconsistency: pivot in the rhs block
        for p in pivots:
            if p >= ncols:
                return None, self.kernel_basis(), False
        kernel = self.kernel_basis()
        part = ExactMatrix(ncols, b.cols)
        for i, p in enumerate(pivots):
            for c in range(b.cols):
                part[p, c] = red.data[i][ncols + c]
        return part, kernel, len(kernel) == 0

    def solve_unique(self, b: "ExactMatrix") -> "ExactMatrix":
        part, kernel, unique = self.solve(b)
        if part is None:
            raise ShapeError("linear system inconsistent")
        if not unique:
            raise ShapeError("linear system underdetermined")
        return part

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ShapeError("inverse of non-square matrix")
        part, kernel, unique = self.solve(ExactMatrix.identity(self.rows))
        if part is None or not unique:
            raise ShapeError("matrix is singular")
        return part

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "conductor": self.conductor,
            "entries": [[x.to_json()["coords"] for x in row] for row in self.data],
        }

    @staticmethod
    def from_json(data: dict) -> "ExactMatrix":
        try:
            n = data["conductor"]
            entries = [
                [ExactScalar(n, [Fraction(s) for s in cell]) for cell in row]
                for row in data["entries"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"bad matrix serialization: {exc}") from exc
        return ExactMatrix(data["rows"], data["cols"], entries)

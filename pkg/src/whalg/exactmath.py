"""Exact scalars in cyclotomic fields and sparse exact linear algebra.

Every coefficient in this package is a `Cyclotomic`: an element of Q(zeta_N)
stored in a canonical reduced form, so equality of values is literal equality
of representations.  No floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction  # gcd-reduced numerator / positive denominator invariants


class ConductorMismatch(ValueError):
    pass


def _poly_divmod(num, den):
    # dense polynomial division, den monic, lowest degree first
    num = list(num)
    dn = len(den) - 1
    out = [0] * max(0, len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    while num and not num[-1]:
        num.pop()
    return out, num


def cyclotomic_polynomial(n):
    """Coefficient list of Phi_n over Z (monic, lowest degree first)."""
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    if n == 1:
        return poly
    for d in range(1, n):
        if n % d == 0:
            q, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not rem
            poly = q
    return poly


class _Field:
    """Per-conductor reduction data, built once and cached."""

    def __init__(self, n):
        self.n = n
        phi = cyclotomic_polynomial(n)
        self.poly = phi
        self.degree = len(phi) - 1
        # canonical form of zeta^k for k = 0 .. 2n-2, as (exponent, Fraction) pairs
        tab = []
        for k in range(2 * n - 1):
            e = k % n
            vec = [Fraction(0)] * (n + 1)
            vec[e] = Fraction(1)
            for i in range(n, self.degree - 1, -1):
                c = vec[i]
                if c:
                    vec[i] = Fraction(0)
                    for j in range(self.degree):
                        vec[j + i - self.degree] -= c * phi[j]
            tab.append(tuple((i, v) for i, v in enumerate(vec[: self.degree]) if v))
        self.powtab = tab


_FIELDS = {}


def _field(n):
    f = _FIELDS.get(n)
    if f is None:
        f = _FIELDS[n] = _Field(n)
    return f


class Cyclotomic:
    """Element of Q(zeta_N), canonical-reduced mod Phi_N.

    Stored as a sorted tuple of (exponent, Fraction) pairs with exponents
    below deg Phi_N and no zero coefficients; two values are equal iff their
    stored forms are identical.  Immutable and hashable.
    """

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n, c):
        self.n = n
        self.c = c
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_pairs(n, pairs):
        """Canonical reduction of arbitrary (exponent, coefficient) pairs."""
        f = _field(n)
        acc = {}
        for e, q in pairs:
            q = Fraction(q)
            if not q:
                continue
            for e2, c2 in f.powtab[e % n]:
                acc[e2] = acc.get(e2, Fraction(0)) + q * c2
        return Cyclotomic(n, tuple(sorted((e, q) for e, q in acc.items() if q)))

    @staticmethod
    def rational(n, q):
        q = Fraction(q)
        if not q:
            return Cyclotomic(n, ())
        return Cyclotomic(n, ((0, q),))

    @staticmethod
    def zero(n):
        return Cyclotomic(n, ())

    @staticmethod
    def one(n):
        return Cyclotomic(n, ((0, Fraction(1)),))

    # -- basics ------------------------------------------------------------

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == ((0, Fraction(1)),)

    def is_rational(self):
        return not self.c or (len(self.c) == 1 and self.c[0][0] == 0)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.n, self.c))
        return h

    def _check(self, other):
        if self.n != other.n:
            raise ConductorMismatch(f"conductor {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.c)
        for e, q in other.c:
            s = acc.get(e, Fraction(0)) + q
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return Cyclotomic(self.n, tuple(sorted(acc.items())))

    def __neg__(self):
        return Cyclotomic(self.n, tuple((e, -q) for e, q in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        a, b = self.c, other.c
        if not a or not b:
            return Cyclotomic(self.n, ())
        if len(a) == 1 and a[0][0] == 0:  # rational factor fast path
            q = a[0][1]
            if q == 1:
                return other
            return Cyclotomic(self.n, tuple((e, q * c) for e, c in b))
        if len(b) == 1 and b[0][0] == 0:
            q = b[0][1]
            if q == 1:
                return self
            return Cyclotomic(self.n, tuple((e, q * c) for e, c in a))
        tab = _field(self.n).powtab
        acc = {}
        for e1, c1 in a:
            for e2, c2 in b:
                q = c1 * c2
                for e3, c3 in tab[e1 + e2]:
                    s = acc.get(e3, Fraction(0)) + q * c3
                    if s:
                        acc[e3] = s
                    else:
                        del acc[e3]
        return Cyclotomic(self.n, tuple(sorted(acc.items())))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        """Multiplicative inverse; raises ZeroDivisionError on 0."""
        if not self.c:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if len(self.c) == 1:
            e, q = self.c[0]
            if e == 0:
                return Cyclotomic(self.n, ((0, 1 / q),))
        d = _field(self.n).degree
        cols = []
        for j in range(d):
            col = self * Cyclotomic(self.n, ((j, Fraction(1)),))
            vec = [Fraction(0)] * d
            for e, q in col.c:
                vec[e] = q
            cols.append(vec)
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [Fraction(0)] * d
        rhs[0] = Fraction(1)
        sol = _dense_solve(rows, rhs)
        if sol is None:
            raise ZeroDivisionError("zero divisor (non-invertible cyclotomic)")
        return Cyclotomic(self.n, tuple((j, q) for j, q in enumerate(sol) if q))

    def __truediv__(self, other):
        return self * other.inverse()

    def embed(self, m):
        """Explicitly embed into conductor m (requires n | m)."""
        if m % self.n:
            raise ConductorMismatch(f"{self.n} does not divide {m}")
        k = m // self.n
        return Cyclotomic.from_pairs(m, tuple((e * k, q) for e, q in self.c))

    def is_root_of_unity(self):
        if not self.c:
            return False
        return (self ** self.n).is_one()

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e, q in self.c:
            if e == 0:
                parts.append(str(q))
            elif q == 1:
                parts.append(f"z{self.n}^{e}" if e > 1 else f"z{self.n}")
            else:
                parts.append(f"{q}*z{self.n}^{e}" if e > 1 else f"{q}*z{self.n}")
        return " + ".join(parts)

    # -- JSON wire form: exactly N [num, den] pairs, canonical-reduced ------

    def to_json(self):
        vec = [[0, 1] for _ in range(self.n)]
        for e, q in self.c:
            vec[e] = [q.numerator, q.denominator]
        return {"conductor": self.n, "coeffs": vec}

    @staticmethod
    def from_json(obj):
        n = obj["conductor"]
        coeffs = obj["coeffs"]
        if len(coeffs) != n:
            raise ValueError("scalar encoding must carry exactly N coefficient pairs")
        return Cyclotomic.from_pairs(
            n, ((e, Fraction(num, den)) for e, (num, den) in enumerate(coeffs))
        )


def root_of_unity(n, k=1):
    """zeta_n^k at conductor n."""
    return Cyclotomic.from_pairs(n, ((k % n, Fraction(1)),))


def cyclo_mul(a, b):
    return a * b


def cyclo_inverse(a):
    return a.inverse()


def _dense_solve(rows, rhs):
    # small dense rational solver (cyclotomic inversion only)
    n = len(rows)
    m = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    piv = 0
    pivots = []
    for col in range(n):
        r = next((i for i in range(piv, n) if m[i][col]), None)
        if r is None:
            continue
        m[piv], m[r] = m[r], m[piv]
        inv = 1 / m[piv][col]
        m[piv] = [x * inv for x in m[piv]]
        for i in range(n):
            if i != piv and m[i][col]:
                c = m[i][col]
                m[i] = [x - c * y for x, y in zip(m[i], m[piv])]
        pivots.append(col)
        piv += 1
    for i in range(piv, n):
        if m[i][n]:
            return None
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = m[i][n]
    return sol


# ---------------------------------------------------------------------------
# sparse exact linear algebra
# ---------------------------------------------------------------------------


class SparseMatrix:
    """Sparse matrix over a fixed cyclotomic field; no stored zeros."""

    __slots__ = ("rows", "cols", "n", "data", "_colidx")

    def __init__(self, rows, cols, n, data=None):
        self.rows = rows
        self.cols = cols
        self.n = n  # conductor
        self.data = {} if data is None else data
        self._colidx = None

    def copy(self):
        return SparseMatrix(self.rows, self.cols, self.n, dict(self.data))

    def set(self, i, j, v):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        if v:
            self.data[(i, j)] = v
        else:
            self.data.pop((i, j), None)
        self._colidx = None

    def add_to(self, i, j, v):
        if not v:
            return
        cur = self.data.get((i, j))
        s = cur + v if cur is not None else v
        if s:
            self.data[(i, j)] = s
        else:
            del self.data[(i, j)]
        self._colidx = None

    def get(self, i, j):
        return self.data.get((i, j), Cyclotomic.zero(self.n))

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.n == other.n
            and self.data == other.data
        )

    __hash__ = None

    @staticmethod
    def identity(d, n):
        one = Cyclotomic.one(n)
        return SparseMatrix(d, d, n, {(i, i): one for i in range(d)})

    @staticmethod
    def from_columns(rows_dim, cols_vectors, n):
        """Assemble from a list of sparse column vectors {row: scalar}."""
        m = SparseMatrix(rows_dim, len(cols_vectors), n)
        for j, col in enumerate(cols_vectors):
            for i, v in col.items():
                if v:
                    m.data[(i, j)] = v
        return m

    def column(self, j):
        return {i: v for (i, jj), v in self.data.items() if jj == j}

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows, self.n, {(j, i): v for (i, j), v in self.data.items()}
        )

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.data.items():
            rows[i][j] = v
        return rows

    def _cols(self):
        if self._colidx is None:
            idx = {}
            for (i, j), v in self.data.items():
                idx.setdefault(j, []).append((i, v))
            self._colidx = idx
        return self._colidx

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        out = SparseMatrix(self.rows, other.cols, self.n)
        rows_other = other.row_dicts()
        for (i, k), v in self.data.items():
            for j, w in rows_other[k].items():
                out.add_to(i, j, v * w)
        out._colidx = None
        return out

    def apply(self, vec):
        """Apply to a sparse vector {index: scalar}."""
        cols = self._cols()
        out = {}
        for j, x in vec.items():
            if not x:
                continue
            for i, v in cols.get(j, ()):
                s = out.get(i)
                p = v * x
                out[i] = s + p if s is not None else p
        return {i: v for i, v in out.items() if v}

    def add(self, other):
        out = self.copy()
        for (i, j), v in other.data.items():
            out.add_to(i, j, v)
        return out

    def sub(self, other):
        out = self.copy()
        for (i, j), v in other.data.items():
            out.add_to(i, j, -v)
        return out

    def scale(self, c):
        out = SparseMatrix(self.rows, self.cols, self.n)
        for k, v in self.data.items():
            w = v * c
            if w:
                out.data[k] = w
        return out

    def is_zero(self):
        return not self.data

    # -- elimination-backed queries ------------------------------------------

    def rank(self):
        ech, _ = _rref(self.row_dicts(), self.n)
        return len(ech)

    def nullspace_dim(self):
        return self.cols - self.rank()

    def nullspace_basis(self):
        ech, pivots = _rref(self.row_dicts(), self.n)
        piv_of = {p: r for r, p in enumerate(pivots)}
        one = Cyclotomic.one(self.n)
        basis = []
        for j in range(self.cols):
            if j in piv_of:
                continue
            vec = {j: one}
            for p, r in piv_of.items():
                c = ech[r].get(j)
                if c:
                    vec[p] = -c
            basis.append(vec)
        return basis

    def pivot_columns(self):
        """Deterministic pivot column set of the column space."""
        ech, pivots = _rref(self.row_dicts(), self.n)
        return sorted(pivots)

    def solve(self, b):
        """One exact solution of M x = b (b a sparse dict), or None."""
        rows = self.row_dicts()
        aug = self.cols
        for i, v in b.items():
            if v:
                rows[i][aug] = v
        ech, pivots = _rref(rows, self.n, aug_col=aug)
        if ech is None:
            return None  # inconsistent
        sol = {}
        for r, p in enumerate(pivots):
            v = ech[r].get(aug)
            if v:
                sol[p] = v
        return sol

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        d = self.rows
        rows = self.row_dicts()
        one = Cyclotomic.one(self.n)
        for i in range(d):
            rows[i][d + i] = one
        ech, pivots = _rref(rows, self.n)
        if sorted(p for p in pivots if p < d) != list(range(d)):
            raise ValueError("singular matrix")
        out = SparseMatrix(d, d, self.n)
        for r, p in enumerate(pivots):
            for j, v in ech[r].items():
                if j >= d:
                    out.data[(p, j - d)] = v
        return out


class SparseTensor3:
    """Sparse order-3 tensor; houses multiplication/comultiplication tables."""

    __slots__ = ("dims", "n", "data")

    def __init__(self, dims, n, data=None):
        self.dims = dims
        self.n = n
        self.data = {} if data is None else data

    def set(self, i, j, k, v):
        d1, d2, d3 = self.dims
        if not (0 <= i < d1 and 0 <= j < d2 and 0 <= k < d3):
            raise IndexError((i, j, k))
        if v:
            self.data[(i, j, k)] = v
        else:
            self.data.pop((i, j, k), None)

    def add_to(self, i, j, k, v):
        if not v:
            return
        cur = self.data.get((i, j, k))
        s = cur + v if cur is not None else v
        if s:
            self.data[(i, j, k)] = s
        else:
            del self.data[(i, j, k)]

    def __eq__(self, other):
        return (
            isinstance(other, SparseTensor3)
            and self.dims == other.dims
            and self.n == other.n
            and self.data == other.data
        )

    __hash__ = None


def _rref(rows, n, aug_col=None):
    """Sparse exact reduced row echelon form.

    rows: list of {col: Cyclotomic}.  Returns (rref_rows, pivot_cols); the
    pivot of each returned row is the lowest column index present when the
    row was processed (a deterministic rule), rows are processed shortest
    first, and every pivot column is eliminated from all other rows, so the
    result is a genuine RREF.  With `aug_col` set, a pivot landing on that
    column signals inconsistency and (None, None) is returned.

    Exact field arithmetic throughout; Fraction keeps every coefficient
    gcd-normalized, which bounds intermediate swell at desk scale.
    """
    work = [dict(r) for r in rows if r]
    work.sort(key=len, reverse=True)
    ech = []
    pivots = []
    pivot_of_col = {}
    occupancy = {}  # col -> set of ech row idxs with a nonzero entry there

    def _set(ridx, prow, j, v):
        if v:
            if j not in prow:
                occupancy.setdefault(j, set()).add(ridx)
            prow[j] = v
        elif j in prow:
            del prow[j]
            occupancy[j].discard(ridx)

    while work:
        row = work.pop()
        # reduce against existing pivot rows until stable
        while True:
            hit = None
            for j in row:
                r = pivot_of_col.get(j)
                if r is not None:
                    hit = (j, r)
                    break
            if hit is None:
                break
            j, r = hit
            c = row.pop(j)
            for j2, v in ech[r].items():
                if j2 == j:
                    continue
                cur = row.get(j2)
                nv = (cur - c * v) if cur is not None else -(c * v)
                if nv:
                    row[j2] = nv
                else:
                    row.pop(j2, None)
        if not row:
            continue
        p = min(row)
        if aug_col is not None and p == aug_col:
            return None, None
        inv = row[p].inverse()
        row = {j: v * inv for j, v in row.items()}
        # eliminate the new pivot column from the pivot rows that contain it
        ridx = len(ech)
        for r2 in sorted(occupancy.get(p, ())):
            prow = ech[r2]
            c = prow[p]
            _set(r2, prow, p, Cyclotomic.zero(n))
            for j2, v in row.items():
                if j2 == p:
                    continue
                cur = prow.get(j2)
                nv = (cur - c * v) if cur is not None else -(c * v)
                _set(r2, prow, j2, nv)
        for j in row:
            occupancy.setdefault(j, set()).add(ridx)
        pivot_of_col[p] = ridx
        ech.append(row)
        pivots.append(p)
    return ech, pivots


def solve_linear(M, b):
    """Exact solution of M x = b, or None when none exists."""
    return M.solve(b)


def rank(M):
    return M.rank()


def nullspace_dim(M):
    return M.nullspace_dim()

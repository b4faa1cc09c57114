"""Exact scalars over Q and the cyclotomic fields Q(zeta_l), plus sparse
exact linear algebra (rank, nullspace, solve) over them.

For l in {1, 2} the field degenerates to plain rationals (phi(l) = 1);
scalars are gmpy2.mpq values and the field descriptor only remembers the
root-of-unity generator q = +1 / -1.  For l >= 3 scalars are CycloNum
coefficient vectors of length phi(l), kept fully reduced modulo the l-th
cyclotomic polynomial Phi_l, so every nonzero scalar has an inverse.

Rational values interoperate with every field; CycloNums only with their
own field.  There is no floating point anywhere in this package.
"""

import functools

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

QZERO = Rational(0)
QONE = Rational(1)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q (ascending coefficient lists)

def _poly_trim(c):
    while c and not c[-1]:
        c.pop()
    return c


def _poly_mul(a, b):
    out = [QZERO] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = list(a)
    q = [QZERO] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        f = a[-1] * inv
        d = len(a) - len(b)
        q[d] = f
        for i, bi in enumerate(b):
            a[d + i] -= f * bi
        _poly_trim(a)
        if not a:
            break
    return _poly_trim(q), a


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [QZERO] * (n - len(a))
    b = list(b) + [QZERO] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


@functools.cache
def _cyclotomic_poly(l):
    # Phi_l = (x^l - 1) / prod_{d | l, d < l} Phi_d, by exact division.
    num = [-QONE] + [QZERO] * (l - 1) + [QONE]
    den = [QONE]
    for d in range(1, l):
        if l % d == 0:
            den = _poly_mul(den, _cyclotomic_poly(d))
    quo, rem = _poly_divmod(num, den)
    assert not rem
    return tuple(quo)


class CycloNum:
    """Element of Q(zeta_l) for l >= 3, as a reduced vector mod Phi_l."""

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.field is not self.field:
                raise ValueError("cyclotomic scalars from different fields")
            return other.c
        if isinstance(other, (int, Rational)):
            return (Rational(other),) + (QZERO,) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return CycloNum(self.field, tuple(a + b for a, b in zip(self.c, oc)))

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return CycloNum(self.field, tuple(a - b for a, b in zip(self.c, oc)))

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return CycloNum(self.field, tuple(b - a for a, b in zip(self.c, oc)))

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            s = Rational(other)
            return CycloNum(self.field, tuple(a * s for a in self.c))
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return CycloNum(self.field, self.field._reduce_product(self.c, oc))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        return CycloNum(self.field, self.field._invert(self.c))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (QONE / Rational(other))
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return self * CycloNum(self.field, oc).inverse()

    def __rtruediv__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return CycloNum(self.field, oc) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return self.c == oc

    def __hash__(self):
        return hash((self.field.l, self.c))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"CycloNum(l={self.field.l}, {format_scalar(self)!r})"


class CyclotomicField:
    """Field descriptor for Q(zeta_l): order l, Phi_l and phi(l)."""

    def __init__(self, l):
        if l < 1:
            raise ValueError("field order must be a positive integer")
        self.l = l
        self.minpoly = _cyclotomic_poly(l)
        self.degree = len(self.minpoly) - 1  # phi(l)
        if self.degree == 1:
            self.zero = QZERO
            self.one = QONE
            # x = root of Phi_l: +1 for l=1, -1 for l=2
            self.q = -self.minpoly[0]
        else:
            self.zero = CycloNum(self, (QZERO,) * self.degree)
            self.one = CycloNum(self, (QONE,) + (QZERO,) * (self.degree - 1))
            self.q = CycloNum(self, (QZERO, QONE) + (QZERO,) * (self.degree - 2))
            # x^k mod Phi_l for k = 0 .. 2*phi-2, used to fold products
            red = [[QZERO] * self.degree for _ in range(2 * self.degree - 1)]
            for k in range(self.degree):
                red[k][k] = QONE
            for k in range(self.degree, 2 * self.degree - 1):
                prev = red[k - 1]
                shifted = [QZERO] + prev[:-1]
                top = prev[-1]
                red[k] = [s - top * m for s, m in zip(shifted, self.minpoly[:-1])]
            self._red = tuple(tuple(r) for r in red)

    def _reduce_product(self, a, b):
        d = self.degree
        conv = [QZERO] * (2 * d - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
        out = [QZERO] * d
        for k, ck in enumerate(conv):
            if not ck:
                continue
            rk = self._red[k]
            for t in range(d):
                if rk[t]:
                    out[t] += ck * rk[t]
        return tuple(out)

    def _invert(self, a):
        # extended Euclid in Q[x] against the irreducible Phi_l
        r0, r1 = list(self.minpoly), _poly_trim(list(a))
        t0, t1 = [], [QONE]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
        inv = 1 / r1[0]
        t1 = [x * inv for x in t1]
        t1 += [QZERO] * (self.degree - len(t1))
        return tuple(t1[:self.degree])

    def from_rational(self, v):
        v = Rational(v)
        if self.degree == 1:
            return v
        return CycloNum(self, (v,) + (QZERO,) * (self.degree - 1))

    def element(self, coeffs):
        """Scalar from phi(l) rational coordinates in the power basis."""
        coeffs = tuple(Rational(c) for c in coeffs)
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates")
        if self.degree == 1:
            return coeffs[0]
        return CycloNum(self, coeffs)

    def coerce(self, v):
        if isinstance(v, CycloNum):
            if v.field is not self:
                raise ValueError("scalar from a different cyclotomic field")
            return v
        return self.from_rational(v)

    def is_rational_field(self):
        return self.degree == 1

    def __repr__(self):
        return f"CyclotomicField(l={self.l}, degree={self.degree})"


@functools.cache
def cyclotomic_field(l):
    """Field descriptor for Q(zeta_l); cached so descriptors are singletons."""
    return CyclotomicField(l)


def scalar_field(v):
    """Field a scalar belongs to, or None for field-agnostic rationals."""
    return v.field if isinstance(v, CycloNum) else None


def fields_compatible(f1, f2):
    """Scalars interoperate iff both fields are rational or orders match."""
    return f1 is f2 or (f1.degree == 1 and f2.degree == 1)


def format_scalar(v):
    """Serialize: "p/q" for rationals, "c0 + c1*z + ..." for cyclotomics."""
    if not isinstance(v, CycloNum):
        return str(v)
    parts = []
    for k, c in enumerate(v.c):
        if not c:
            continue
        mono = "1" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if k == 0:
            text = str(c)
        elif c == 1:
            text = mono
        elif c == -1:
            text = "-" + mono
        else:
            text = f"{c}*{mono}"
        if parts and not text.startswith("-"):
            parts.append("+ " + text)
        elif parts:
            parts.append("- " + text[1:])
        else:
            parts.append(text)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# sparse exact matrices

class ExactMatrix:
    """Sparse matrix over one cyclotomic field; no stored zero entries."""

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows, cols, field, entries=None):
        self.rows = rows
        self.cols = cols
        self.field = field
        self.entries = {}
        if entries:
            for (r, c), v in entries.items() if isinstance(entries, dict) else entries:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError("entry outside matrix shape")
                v = field.coerce(v)
                if v:
                    self.entries[(r, c)] = v

    @classmethod
    def from_rows(cls, field, rowlist, cols=None):
        rows = len(rowlist)
        if cols is None:
            cols = len(rowlist[0]) if rowlist else 0
        ent = {}
        for r, row in enumerate(rowlist):
            for c, v in enumerate(row):
                ent[(r, c)] = v
        return cls(rows, cols, field, ent)

    def transpose(self):
        return ExactMatrix(self.cols, self.rows, self.field,
                           {(c, r): v for (r, c), v in self.entries.items()})

    def matvec(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [self.field.zero] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] = out[r] + v * vec[c]
        return tuple(out)

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, l={self.field.l})"


def _gauss_jordan(rowdicts, markowitz=True, forbidden_cols=()):
    """In-place full reduction; returns pivot list [(row, col), ...].

    Pivot choice: Markowitz cost (nnz_row - 1)*(nnz_col - 1), ties broken
    by lowest column index then lowest row index, which makes every
    downstream basis reproducible.
    """
    col_rows = {}
    for ri, row in enumerate(rowdicts):
        for c in row:
            col_rows.setdefault(c, set()).add(ri)
    pivot_rows, pivot_cols, pivots = set(), set(), []
    forbidden = set(forbidden_cols)
    while True:
        best = None
        for c in sorted(col_rows):
            if c in pivot_cols or c in forbidden:
                continue
            live = [ri for ri in col_rows[c] if ri not in pivot_rows]
            if not live:
                continue
            if not markowitz:
                ri = min(live)
                best = (0, c, ri)
                break
            for ri in live:
                key = ((len(rowdicts[ri]) - 1) * (len(live) - 1), c, ri)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, c, ri = best
        row = rowdicts[ri]
        inv = 1 / row[c] if not isinstance(row[c], CycloNum) else row[c].inverse()
        if row[c] != 1:
            for cc in row:
                row[cc] = row[cc] * inv
        for rj in sorted(col_rows[c]):
            if rj == ri:
                continue
            other = rowdicts[rj]
            factor = other[c]
            for cc, v in row.items():
                fv = factor * v
                if cc in other:
                    nv = other[cc] - fv
                    if nv:
                        other[cc] = nv
                    else:
                        del other[cc]
                        col_rows[cc].discard(rj)
                else:
                    other[cc] = -fv
                    col_rows.setdefault(cc, set()).add(rj)
        pivots.append((ri, c))
        pivot_rows.add(ri)
        pivot_cols.add(c)
    return pivots


def rank_of(matrix):
    """Exact rank."""
    return len(_gauss_jordan(matrix.row_dicts()))


def _canonical_basis(vectors, ncols, field):
    # unique reduced row-echelon representative of the span, leftmost pivots
    rows = [{c: v for c, v in enumerate(vec) if v} for vec in vectors]
    pivots = _gauss_jordan(rows, markowitz=False)
    out = []
    for ri, c in sorted(pivots, key=lambda p: p[1]):
        row = rows[ri]
        out.append(tuple(row.get(j, field.zero) for j in range(ncols)))
    return out


def nullspace(matrix):
    """Exact (rank, right-nullspace basis); basis in reduced echelon form.

    rank + len(basis) == matrix.cols, and matrix.matvec(v) == 0 for every
    basis vector v; the basis is canonical, so repeated runs emit
    byte-identical output.
    """
    field = matrix.field
    rows = matrix.row_dicts()
    pivots = _gauss_jordan(rows)
    pivot_cols = {c: ri for ri, c in pivots}
    free_cols = [c for c in range(matrix.cols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = [field.zero] * matrix.cols
        vec[f] = field.one
        for c, ri in pivot_cols.items():
            v = rows[ri].get(f)
            if v:
                vec[c] = -v
        basis.append(tuple(vec))
    return len(pivots), _canonical_basis(basis, matrix.cols, field)


def solve(matrix, rhs):
    """One exact solution of M x = rhs, or None if inconsistent."""
    field = matrix.field
    if len(rhs) != matrix.rows:
        raise ValueError("right-hand side length mismatch")
    aug_col = matrix.cols
    rows = matrix.row_dicts()
    for r, v in enumerate(rhs):
        v = field.coerce(v)
        if v:
            rows[r][aug_col] = v
    pivots = _gauss_jordan(rows, forbidden_cols=(aug_col,))
    sol = [field.zero] * matrix.cols
    for ri, c in pivots:
        v = rows[ri].get(aug_col)
        if v:
            sol[c] = v
    # pivoting is free to leave non-pivot columns with nonzero entries in
    # pivot rows; verify the candidate exactly before returning it
    if matrix.matvec(sol) != tuple(field.coerce(v) for v in rhs):
        return None
    return tuple(sol)

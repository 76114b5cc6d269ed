"""Coefficient systems and exact linear algebra over a field.

Matrices are plain lists of rows.  Entries belong to whichever coefficient
system interprets them: ``fractions.Fraction`` for the rationals, reduced
residues for a prime field.  Linear algebra over the integers lives in
``snf``; here ``ZZ`` is only a marker object that callers branch on.
"""

from fractions import Fraction

from .errors import CoefficientError


class Rationals:
    """The field of rational numbers."""

    name = "Q"
    is_field = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field with p elements, p prime.  Elements are ints in range(p)."""

    is_field = True

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise CoefficientError("modulus %r is not prime" % (p,))
        self.p = p
        self.name = "F%d" % p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


class Integers:
    """Marker for integer coefficients.  Not a field."""

    name = "Z"
    is_field = False

    def __repr__(self):
        return "ZZ"


QQ = Rationals()
ZZ = Integers()


def GF(p):
    return PrimeField(p)


def coefficient_system(text):
    """Parse a coefficient selector: ``q``, ``z``, or ``f<p>`` (e.g. ``f5``)."""
    t = text.strip().lower()
    if t in ("q", "qq", "rational", "rationals"):
        return QQ
    if t in ("z", "zz", "int", "integers"):
        return ZZ
    if t.startswith("f") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise CoefficientError("unknown coefficient system %r" % (text,))


def require_field(coeffs):
    if not getattr(coeffs, "is_field", False):
        raise CoefficientError("%r is not a field" % (coeffs,))
    return coeffs


def zeros(nrows, ncols, field):
    return [[field.zero] * ncols for _ in range(nrows)]


def identity(n, field):
    m = zeros(n, n, field)
    for i in range(n):
        m[i][i] = field.one
    return m


def mat_from_int(rows, field):
    return [[field.from_int(x) for x in row] for row in rows]


def mat_mul(a, b, field):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m, field)
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if field.is_zero(x):
                continue
            row_b = b[t]
            row_o = out[i]
            for j in range(m):
                row_o[j] = field.add(row_o[j], field.mul(x, row_b[j]))
    return out


def mat_vec(a, v, field):
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            s = field.add(s, field.mul(x, y))
        out.append(s)
    return out


def rref(rows, field):
    """Reduced row echelon form.

    Returns (echelon_rows, pivot_columns).  The input is not modified.
    Zero rows are dropped from the result.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if not field.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field):
    return len(rref(rows, field)[0])


def nullspace(rows, field):
    """Basis of the right kernel {v : rows @ v = 0}, as a list of vectors."""
    if not rows:
        return []
    ncols = len(rows[0])
    ech, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(ech[r][fc])
        basis.append(v)
    return basis


def solve(rows, b, field):
    """One solution of rows @ x = b, or None when inconsistent."""
    if not rows:
        return None if any(not field.is_zero(x) for x in b) else []
    ncols = len(rows[0])
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    ech, pivots = rref(aug, field)
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = ech[r][ncols]
    return x


def row_space_contains(rows, vec, field):
    if all(field.is_zero(x) for x in vec):
        return True
    base = rank(rows, field)
    return rank(list(rows) + [list(vec)], field) == base


def row_spaces_equal(rows_a, rows_b, field):
    ra = rank(rows_a, field)
    rb = rank(rows_b, field)
    if ra != rb:
        return False
    return rank(list(rows_a) + list(rows_b), field) == ra

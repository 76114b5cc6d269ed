"""Integer matrix routines: Smith normal form with transform tracking,
integer kernels and solves, exact determinants.

All matrices are lists of row lists of Python ints.
"""


def int_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def int_mat_mul(a, b):
    if not a or not b:
        return [[] for _ in a]
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if x:
                row_b = b[t]
                row_o = out[i]
                for j in range(m):
                    row_o[j] += x * row_b[j]
    return out


def int_mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def int_det(m):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m):
    """Decompose an integer matrix as U @ m @ V = D.

    U and V are unimodular; D is diagonal with nonnegative entries
    d_1 | d_2 | ... .  Returns (U, D, V).
    """
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    a = [list(row) for row in m]
    u = int_identity(nrows)
    v = int_identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    bound = min(nrows, ncols)
    while t < bound:
        # locate the nonzero entry of least magnitude in the working block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if a[t][t] < 0:
            negate_row(t)
        pivot = a[t][t]

        dirty = False
        for i in range(t + 1, nrows):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // pivot))
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, ncols):
            if a[t][j]:
                add_col(j, t, -(a[t][j] // pivot))
                if a[t][j]:
                    dirty = True
        if dirty:
            continue

        # row and column are clear; enforce divisibility of the tail block
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1

    return u, a, v


def diagonal_entries(d):
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i]:
            out.append(d[i][i])
    return out


def invariant_factors(m):
    """Nonzero diagonal of the Smith form: d_1 | d_2 | ... ."""
    _, d, _ = smith_normal_form(m)
    return diagonal_entries(d)


def int_rank(m):
    return len(invariant_factors(m))


def int_kernel(m):
    """Basis of {x : m @ x = 0} over Z, as a list of column vectors.

    The basis spans a saturated sublattice: any integer solution is an
    integer combination of it.
    """
    ncols = len(m[0]) if m else 0
    if not m:
        return [[0] * 0 for _ in range(0)]
    _, d, v = smith_normal_form(m)
    r = len(diagonal_entries(d))
    basis = []
    for j in range(r, ncols):
        basis.append([v[i][j] for i in range(ncols)])
    return basis


def int_solve(m, b):
    """One integer solution x of m @ x = b, or None when there is none."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    if nrows != len(b):
        raise ValueError("dimension mismatch")
    u, d, v = smith_normal_form(m)
    y = int_mat_vec(u, b)
    x_prime = [0] * ncols
    r = min(nrows, ncols)
    for i in range(nrows):
        di = d[i][i] if i < r else 0
        if di:
            if y[i] % di:
                return None
            x_prime[i] = y[i] // di
        elif y[i]:
            return None
    return int_mat_vec(v, x_prime)


def int_inverse(m):
    """Inverse of a unimodular integer matrix."""
    n = len(m)
    det = int_det(m)
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular (det=%d)" % det)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = int_solve(m, e)
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]

"""Small exact linear algebra toolkit over Q and Z.

Dense matrices are lists of lists of Fractions (or ints for the integer
routines).  Sizes in this package stay in the low hundreds, so clarity wins
over asymptotics: plain fraction Gauss-Jordan for Q, and a textbook Hermite
normal form with transform for integer kernels.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def mat_copy(a) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> Matrix:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    oi[j] += x * bt[j]
    return out


def mat_vec(a, v) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def vec_mat(v, a) -> list[Fraction]:
    m = len(a[0]) if a else 0
    out = [Fraction(0)] * m
    for x, row in zip(v, a):
        if x == 0:
            continue
        for j in range(m):
            if row[j]:
                out[j] += x * row[j]
    return out


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def rref(a) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(a) -> list[list[Fraction]]:
    """Basis of the right kernel {x : a x = 0}."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [[Fraction(1 if i == j else 0) for i in range(cols)] for j in range(cols)]
    r, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def rank(a) -> int:
    return len(rref(a)[1])


def solve_right(a, b) -> list[Fraction] | None:
    """One solution x of a x = b, or None if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


# ---------------------------------------------------------------------------
# integer routines
# ---------------------------------------------------------------------------


def hnf_with_transform(a: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite form: returns (H, U) with U unimodular and U*A = H.

    Zero rows of H are collected at the bottom; the corresponding rows of U
    form a basis of the integer left kernel {x in Z^n : x A = 0}.
    """
    h = [list(map(int, row)) for row in a]
    n = len(h)
    m = len(h[0]) if n else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(m):
        # find a nonzero pivot below r and reduce the column by gcd steps
        while True:
            nz = [i for i in range(r, n) if h[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, n):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if r < n and h[r][c] != 0:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
            if r == n:
                break
    return h, u


def integer_left_kernel(a: list[list[int]]) -> list[list[int]]:
    """Basis of {x in Z^n : x A = 0}; the lattice is automatically saturated."""
    h, u = hnf_with_transform(a)
    return [u[i] for i in range(len(h)) if all(x == 0 for x in h[i])]

"""Integer lattice algorithms: Smith and column-Hermite forms, lattice membership
with witnesses, quotient modules Z^2 / L.

Matrices are lists of rows of Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(x, y):
    if not x:
        return []
    inner = len(y)
    cols = len(y[0]) if y else 0
    return [[sum(x[i][k] * y[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(x))]


def det(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    fr = [[Fraction(v) for v in row] for row in m]
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if fr[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            fr[c], fr[p] = fr[p], fr[c]
            out = -out
        out *= fr[c][c]
        for r in range(c + 1, n):
            f = fr[r][c] / fr[c][c]
            if f:
                fr[r] = [a - f * b for a, b in zip(fr[r], fr[c])]
    return int(out)


def _rank_two_columns(m) -> int:
    nonzero = [row for row in m if row[0] or row[1]]
    if not nonzero:
        return 0
    a, b = nonzero[0]
    return 2 if any(a * d - b * c for c, d in nonzero[1:]) else 1


def rank(m) -> int:
    """Rank over the rationals."""
    if m and len(m[0]) == 2:
        return _rank_two_columns(m)
    rows = [[Fraction(v) for v in row] for row in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def smith_normal_form(m):
    """Return (U, D, V) with U m V = D, U and V unimodular, D diagonal with d1 | d2 | ..."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(r) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        d[dst] = [a + f * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + f * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            # smallest nonzero pivot in the remaining block
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return u, d, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty |= d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty |= d[t][j] != 0
            if dirty:
                continue
            # enforce divisibility by the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def smith_diagonal(m) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def column_hermite(g):
    """Column echelon form: returns (H, V) with g V = H, V unimodular.

    H is lower echelon: each pivot row has one positive entry in its pivot column
    and zeros to the right of it.
    """
    rows = len(g)
    cols = len(g[0]) if rows else 0
    h = [list(r) for r in g]
    v = identity(cols)

    def col_op(src, dst, f):
        for row in h:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def col_swap(i, j):
        for row in h:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    pc = 0
    pivots = []
    for r in range(rows):
        if pc >= cols:
            break
        while True:
            nz = [j for j in range(pc, cols) if h[r][j]]
            if not nz:
                break
            j = min(nz, key=lambda c: abs(h[r][c]))
            col_swap(pc, j)
            done = True
            for c in range(pc + 1, cols):
                if h[r][c]:
                    col_op(pc, c, -(h[r][c] // h[r][pc]))
                    done = done and h[r][c] == 0
            if done:
                break
        if pc < cols and h[r][pc]:
            if h[r][pc] < 0:
                for row in h:
                    row[pc] = -row[pc]
                for row in v:
                    row[pc] = -row[pc]
            pivots.append((r, pc))
            pc += 1
    return h, v, pivots


def member_with_witness(target, generators):
    """Integer coefficients c with sum c_i gen_i = target, or None."""
    n = len(target)
    gens = [tuple(g) for g in generators]
    if not gens:
        return [] if all(x == 0 for x in target) else None
    g = [[gens[j][i] for j in range(len(gens))] for i in range(n)]
    h, v, pivots = column_hermite(g)
    # solve h z = target by forward substitution on the pivot rows
    z = [0] * len(gens)
    rest = list(target)
    for r, c in pivots:
        q, rem = divmod(rest[r], h[r][c])
        if rem:
            return None
        z[c] = q
        for i in range(n):
            rest[i] -= q * h[i][c]
    if any(rest):
        return None
    coeffs = [sum(v[i][j] * z[j] for j in range(len(gens))) for i in range(len(gens))]
    check = [sum(coeffs[j] * gens[j][i] for j in range(len(gens))) for i in range(n)]
    assert check == list(target)
    return coeffs


@dataclass(frozen=True)
class QuotientModule:
    """Isomorphism type of Z^n / L: free rank plus invariant factors > 1."""

    rank: int
    torsion: tuple = field(default_factory=tuple)

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def quotient(generators, dim: int = 2) -> QuotientModule:
    gens = [tuple(g) for g in generators]
    if not gens:
        return QuotientModule(dim, ())
    m = [[gens[j][i] for j in range(len(gens))] for i in range(dim)]
    diag = [x for x in smith_diagonal(m) if x]
    return QuotientModule(dim - len(diag), tuple(x for x in diag if x > 1))


def ext_gcd(a: int, b: int):
    """(g, x, y) with a x + b y = g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def unimodular_reduce(vec):
    """Unimodular G with vec G = (gcd(vec), 0, ..., 0)."""
    n = len(vec)
    if not any(vec):
        raise ValueError("zero vector")
    row = list(vec)
    g = identity(n)
    for j in range(1, n):
        a, b = row[0], row[j]
        if b == 0:
            continue
        d, x, y = ext_gcd(a, b)
        # columns 0, j  <-  [[x, -b/d], [y, a/d]] applied on the right
        p, q = -b // d, a // d
        for r in g:
            r[0], r[j] = r[0] * x + r[j] * y, r[0] * p + r[j] * q
        row[0], row[j] = d, 0
    if row[0] < 0:
        for r in g:
            r[0] = -r[0]
        row[0] = -row[0]
    return g


def in_rational_span(target, generators) -> bool:
    """True when some nonzero multiple of target lies in the lattice."""
    gens = [list(g) for g in generators]
    n = len(target)
    if not any(target):
        return True
    if not gens:
        return False
    # rank of the generator set, with and without target, computed on rows = vectors
    return rank(gens) == rank(gens + [list(target)])

"""Exact arithmetic in SL(2,Z) and PSL(2,Z) = <a, b | a^2, b^3>.

Generators of SL(2,Z): s = [[0,1],[-1,0]] (order 4) and t = [[0,1],[-1,1]]
(order 6), with s^2 = t^3 = -E.  Their images in PSL(2,Z) are a and b.
PSL words are tuples over the letters "a", "b", "b2".
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

INFINITE = inf


@dataclass(frozen=True)
class Mat:
    """2x2 integer matrix [[a, b], [c, d]] of determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for x in (self.a, self.b, self.c, self.d):
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError("matrix entries must be integers")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def from_rows(cls, rows) -> Mat:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __mul__(self, other: Mat) -> Mat:
        return Mat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> Mat:
        return Mat(-self.a, -self.b, -self.c, -self.d)

    def inv(self) -> Mat:
        return Mat(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> Mat:
        base = self if n >= 0 else self.inv()
        n = abs(n)
        out = E
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def trace(self) -> int:
        return self.a + self.d

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def minus_identity(self) -> list[list[int]]:
        """Entries of self - E as a plain 2x2 list."""
        return [[self.a - 1, self.b], [self.c, self.d - 1]]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


E = Mat(1, 0, 0, 1)
MINUS_E = Mat(-1, 0, 0, -1)
S = Mat(0, 1, -1, 0)
T = Mat(0, 1, -1, 1)
SHEAR = Mat(1, 1, 0, 1)

_GEN = {"s": S, "t": T}


def mul(x: Mat, y: Mat) -> Mat:
    return x * y


def conj(q: Mat, x: Mat) -> Mat:
    """q x q^-1."""
    return q * x * q.inv()


def order(m: Mat):
    """Multiplicative order, read off the trace; INFINITE for infinite order."""
    tr = m.trace()
    if tr == 0:
        return 4
    if tr == 1:
        return 6
    if tr == -1:
        return 3
    if tr == 2:
        return 1 if m == E else INFINITE
    if tr == -2:
        return 2 if m == MINUS_E else INFINITE
    return INFINITE


# -- SL words: tuples of (generator, exponent) with generator in {"s", "t"} and exponent +-1

def word_to_matrix(word) -> Mat:
    out = E
    for g, e in word:
        m = _GEN[g]
        out = out * (m if e == 1 else m.inv())
    return out


def format_sl_word(word) -> str:
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in word)


def parse_sl_word(text: str):
    word = []
    for tok in text.split():
        g, _, e = tok.partition("^")
        if g not in _GEN or e not in ("", "1", "-1"):
            raise ValueError(f"bad letter {tok!r}")
        word.append((g, -1 if e == "-1" else 1))
    return tuple(word)


# the shear [[1,1],[0,1]] equals t^-1 s
_SHEAR_WORD = (("t", -1), ("s", 1))
_SHEAR_INV_WORD = (("s", -1), ("t", 1))


def _shear_power(k: int):
    piece = _SHEAR_WORD if k > 0 else _SHEAR_INV_WORD
    return piece * abs(k)


def matrix_to_word(m: Mat):
    """Word in s, t evaluating to m (Euclidean reduction of the first column)."""
    # left multiplications applied so far, as words, most recent last
    applied = []
    cur = m
    while cur.c != 0:
        k = -(cur.a // cur.c)
        if k:
            applied.append(_shear_power(k))
            cur = SHEAR**k * cur
        applied.append((("s", 1),))
        cur = S * cur
    # cur = [[a, b], [0, a]] with a = +-1
    if cur.a == 1:
        tail = _shear_power(cur.b)
    else:
        tail = (("s", 1), ("s", 1)) + _shear_power(-cur.b)
    # m = L_1^-1 ... L_n^-1 cur
    out: list = []
    for piece in applied:
        out.extend((g, -e) for g, e in reversed(piece))
    reduced: list = []
    for letter in out + list(tail):
        if reduced and reduced[-1] == (letter[0], -letter[1]):
            reduced.pop()
        else:
            reduced.append(letter)
    return tuple(reduced)


# -- PSL(2,Z)

_FACTOR = {"a": 0, "b": 1, "b2": 1}
_INV = {"a": "a", "b": "b2", "b2": "b"}
_LIFT = {"a": S, "b": T, "b2": T * T}


def psl_reduce(letters) -> tuple:
    """Normal form via a^2 = e and b^3 = e."""
    stack: list[str] = []
    for x in letters:
        if x not in _FACTOR:
            raise ValueError(f"bad PSL letter {x!r}")
        if stack and _FACTOR[stack[-1]] == _FACTOR[x]:
            y = stack.pop()
            if x == "a":
                continue
            e = ((1 if y == "b" else 2) + (1 if x == "b" else 2)) % 3
            if e:
                stack.append("b" if e == 1 else "b2")
        else:
            stack.append(x)
    return tuple(stack)


def psl_inv(w) -> tuple:
    return tuple(_INV[x] for x in reversed(w))


def psl_mul(*words) -> tuple:
    out: list[str] = []
    for w in words:
        out.extend(w)
    return psl_reduce(out)


def parse_psl_word(text: str) -> tuple:
    return psl_reduce(text.replace("*", " ").split())


def format_psl_word(w) -> str:
    return " ".join(w) if w else "e"


def lift(w) -> Mat:
    """A fixed SL lift of a PSL word (a -> s, b -> t)."""
    out = E
    for x in w:
        out = out * _LIFT[x]
    return out


def project(m: Mat) -> tuple:
    letters = []
    for g, e in matrix_to_word(m):
        if g == "s":
            letters.append("a")
        else:
            letters.append("b" if e == 1 else "b2")
    return psl_reduce(letters)


def psl_order(w):
    """Order of a PSL element: 1, 2, 3 or INFINITE."""
    core, _ = cyclic_core(w)
    if not core:
        return 1
    if len(core) == 1:
        return 2 if core == ("a",) else 3
    return INFINITE


def cyclic_core(w):
    """Return (core, g) with g w g^-1 = core and core cyclically reduced."""
    w = psl_reduce(w)
    g: tuple = ()
    while len(w) >= 2 and _FACTOR[w[0]] == _FACTOR[w[-1]]:
        x = _INV[w[0]]
        w = psl_mul((x,), w, (w[0],))
        g = psl_mul((x,), g)
    return w, g


def psl_conjugate(u, v):
    """Some g with g u g^-1 = v, or None."""
    cu, gu = cyclic_core(u)
    cv, gv = cyclic_core(v)
    if len(cu) != len(cv):
        return None
    for r in range(max(len(cu), 1)):
        if cu[r:] + cu[:r] == cv:
            x = cu[:r]
            # cv = x^-1 cu x
            g = psl_mul(psl_inv(gv), psl_inv(x), gu)
            assert psl_mul(g, u, psl_inv(g)) == psl_reduce(v)
            return g
        if len(cu) <= 1:
            break
    return None


def centralizer_root(u):
    """Generator of the centralizer of a nontrivial PSL element."""
    core, g = cyclic_core(u)
    if not core:
        raise ValueError("the identity has no centralizer root")
    if len(core) == 1:
        root = ("a",) if core == ("a",) else ("b",)
    else:
        n = len(core)
        root = core
        for p in range(2, n + 1, 2):
            if n % p == 0 and core[:p] * (n // p) == core:
                root = core[:p]
                break
    return psl_mul(psl_inv(g), root, g)


def sl_conjugate(x: Mat, y: Mat):
    """Some Q with Q x Q^-1 = y, or None.  Complete."""
    if x.trace() != y.trace():
        return None
    if x == y:
        return E
    px, py = project(x), project(y)
    if not px:
        return None  # x = +-E is central and x != y
    g = psl_conjugate(px, py)
    if g is None:
        return None
    q0 = lift(g)
    z = lift(centralizer_root(px))
    zj = E
    for _ in range(6):
        q = q0 * zj
        if conj(q, x) == y:
            return q
        zj = zj * z
    return None

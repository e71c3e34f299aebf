"""Finitely generated subgroups of Z_k1 * ... * Z_kn via folded graphs.

A group element is a tuple of letters (j, e): factor index j (0-based) and
exponent 1 <= e < k_j, in free-product normal form.  A subgroup is stored as a
graph on states with one partial permutation per factor; a step along factor j
reads the letter (j, 1).  Every edge also carries a word in the free group on
the original generators (signed 1-based indices), chosen so that any closed
path at the basepoint evaluates to the element it reads.  Membership witnesses
are read off these labels.
"""

from __future__ import annotations

import re
from collections import deque
from fractions import Fraction
from math import gcd

ALIASES_23 = {"a": (0, 1), "b": (1, 1), "b2": (1, 2)}


# -- group words

def reduce_word(letters, signature) -> tuple:
    stack: list[tuple[int, int]] = []
    for j, e in letters:
        k = signature[j]
        e %= k
        if e == 0:
            continue
        if stack and stack[-1][0] == j:
            _, e0 = stack.pop()
            e = (e + e0) % k
            if e:
                stack.append((j, e))
        else:
            stack.append((j, e))
    return tuple(stack)


def inverse_word(w, signature) -> tuple:
    return tuple((j, signature[j] - e) for j, e in reversed(w))


def mul_words(signature, *words) -> tuple:
    out: list = []
    for w in words:
        out.extend(w)
    return reduce_word(out, signature)


_LETTER = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, signature) -> tuple:
    """Parse `g<j>^<e>` letters (1-based j); for signature (2,3) also a, b, b2."""
    letters = []
    for tok in text.replace("*", " ").split():
        if tuple(signature) == (2, 3) and tok in ALIASES_23:
            letters.append(ALIASES_23[tok])
            continue
        if tok in ("e", "1"):
            continue
        m = _LETTER.match(tok)
        if not m:
            raise ValueError(f"malformed letter {tok!r}")
        j = int(m.group(1)) - 1
        e = int(m.group(2) or 1)
        if not 0 <= j < len(signature):
            raise ValueError(f"factor index out of range in {tok!r}")
        letters.append((j, e))
    return reduce_word(letters, signature)


def format_word(w, signature) -> str:
    if not w:
        return "e"
    if tuple(signature) == (2, 3):
        names = {v: k for k, v in ALIASES_23.items()}
        return " ".join(names[x] for x in w)
    return " ".join(f"g{j + 1}^{e}" for j, e in w)


def word_from_psl(w) -> tuple:
    return tuple(ALIASES_23[x] for x in w)


def word_to_psl(w) -> tuple:
    names = {v: k for k, v in ALIASES_23.items()}
    return tuple(names[x] for x in w)


# -- free group on the generators: tuples of nonzero ints

def _free_reduce(w) -> tuple:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _free_inv(w) -> tuple:
    return tuple(-x for x in reversed(w))


def _free_mul(*ws) -> tuple:
    out: list[int] = []
    for w in ws:
        out.extend(w)
    return _free_reduce(out)


def _free_pow(w, n: int) -> tuple:
    if n < 0:
        return _free_pow(_free_inv(w), -n)
    return _free_reduce(w * n)


def evaluate_witness(witness, generators, signature) -> tuple:
    out: list = []
    for x in witness:
        g = generators[abs(x) - 1]
        out.extend(g if x > 0 else inverse_word(g, signature))
    return reduce_word(out, signature)


# -- folding

class _Folder:
    def __init__(self, signature):
        self.sig = signature
        self.edges: dict[int, list] = {}  # id -> [src, j, dst, label]
        self.next_edge = 0
        self.next_state = 1
        self.states = {0}

    def new_state(self) -> int:
        s = self.next_state
        self.next_state += 1
        self.states.add(s)
        return s

    def add_edge(self, src, j, dst, label):
        self.edges[self.next_edge] = [src, j, dst, label]
        self.next_edge += 1

    def shift(self, x, delta):
        """Replace the potential of x by eval(delta) times it."""
        if not delta:
            return
        inv = _free_inv(delta)
        for e in self.edges.values():
            if e[0] == x:
                e[3] = _free_mul(delta, e[3])
            if e[2] == x:
                e[3] = _free_mul(e[3], inv)

    def merge(self, x, y, delta):
        """Identify x with y, given eval(delta) * phi(x) = phi(y)."""
        if x == y:
            return
        if x == 0:
            x, y, delta = y, x, _free_inv(delta)
        self.shift(x, delta)
        for e in self.edges.values():
            if e[0] == x:
                e[0] = y
            if e[2] == x:
                e[2] = y
        self.states.discard(x)

    def _determinism_step(self) -> bool:
        seen_out: dict = {}
        seen_in: dict = {}
        for eid, (src, j, dst, lab) in list(self.edges.items()):
            key = (src, j)
            if key in seen_out:
                other = self.edges[seen_out[key]]
                if other[2] == dst:
                    del self.edges[eid]
                else:
                    # phi(other dst) = eval(lab_other^-1 lab) phi(dst)
                    self.merge(dst, other[2], _free_mul(_free_inv(other[3]), lab))
                return True
            seen_out[key] = eid
            key = (dst, j)
            if key in seen_in:
                other = self.edges[seen_in[key]]
                # phi(other src) = eval(lab_other lab^-1) phi(src)
                self.merge(src, other[0], _free_mul(other[3], _free_inv(lab)))
                return True
            seen_in[key] = eid
        return False

    def _orbit_step(self) -> bool:
        for j, k in enumerate(self.sig):
            out = {}
            has_in = set()
            for src, jj, dst, lab in self.edges.values():
                if jj == j:
                    out[src] = (dst, lab)
                    has_in.add(dst)
            for v in sorted(out):
                path = [v]
                labels = []
                cur = v
                while cur in out and len(labels) < k:
                    nxt, lab = out[cur]
                    labels.append(lab)
                    path.append(nxt)
                    cur = nxt
                    if cur == v:
                        break
                if cur == v:
                    d = len(labels)
                    c = gcd(d, k)
                    if c < d:
                        lam_d = _free_mul(*labels)
                        lam_c = _free_mul(*labels[:c])
                        a = pow(d // c, -1, k // c) if k // c > 1 else 0
                        self.merge(path[c], v, _free_mul(_free_pow(lam_d, -a), lam_c))
                        return True
                elif len(labels) == k:
                    self.merge(path[k], v, _free_mul(*labels))
                    return True
                elif len(labels) == k - 1 and v not in has_in and cur not in out:
                    self.add_edge(cur, j, v, _free_inv(_free_mul(*labels)))
                    return True
        return False

    def fold(self):
        while self._determinism_step() or self._orbit_step():
            pass


class CoreGraph:
    """Folded graph of the subgroup generated by `generators`."""

    def __init__(self, signature, generators, out, labels):
        self.signature = tuple(signature)
        self.generators = tuple(generators)
        self.out = out  # out[j][state] = state
        self.labels = labels  # labels[j][state] = free word
        self.inn = [{v: u for u, v in o.items()} for o in out]
        self.states = sorted({0} | {s for o in out for kv in o.items() for s in kv})

    def __repr__(self) -> str:
        gens = ", ".join(format_word(w, self.signature) for w in self.generators)
        return f"CoreGraph(signature={self.signature}, <{gens}>, {len(self.states)} states)"

    def walk(self, w):
        """Follow w from the basepoint; (end state, label product) or None."""
        cur = 0
        acc: list[int] = []
        for j, e in w:
            step = self._forward(j, e, cur)
            if step is None:
                # g_j^e = g_j^-(k-e): an open orbit may only be traversable backwards
                step = self._backward(j, self.signature[j] - e, cur)
            if step is None:
                return None
            cur, labels = step
            acc.extend(labels)
        return cur, _free_reduce(acc)

    def _forward(self, j, e, cur):
        acc: list[int] = []
        for _ in range(e):
            if cur not in self.out[j]:
                return None
            acc.extend(self.labels[j][cur])
            cur = self.out[j][cur]
        return cur, acc

    def _backward(self, j, e, cur):
        acc: list[int] = []
        for _ in range(e):
            prev = self.inn[j].get(cur)
            if prev is None:
                return None
            acc.extend(_free_inv(self.labels[j][prev]))
            cur = prev
        return cur, acc

    def paths_from_base(self) -> dict:
        """A group word read along some path from the basepoint to each state."""
        paths = {0: ()}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for j, k in enumerate(self.signature):
                for v, letter in ((self.out[j].get(u), (j, 1)), (self.inn[j].get(u), (j, k - 1))):
                    if v is not None and v not in paths:
                        paths[v] = mul_words(self.signature, paths[u], (letter,))
                        queue.append(v)
        return paths


def build(signature, generators) -> CoreGraph:
    signature = tuple(signature)
    if any(k < 2 for k in signature):
        raise ValueError("factor orders must be at least 2")
    gens = []
    for w in generators:
        if isinstance(w, str):
            w = parse_word(w, signature)
        for j, e in w:
            if not 0 <= j < len(signature):
                raise ValueError(f"bad letter {(j, e)}")
        gens.append(reduce_word(w, signature))
    f = _Folder(signature)
    for i, w in enumerate(gens):
        steps = [j for j, e in w for _ in range(e)]
        if not steps:
            continue
        cur = 0
        for pos, j in enumerate(steps):
            last = pos == len(steps) - 1
            nxt = 0 if last else f.new_state()
            f.add_edge(cur, j, nxt, (i + 1,) if last else ())
            cur = nxt
    f.fold()
    # renumber states compactly, basepoint first
    order = sorted(f.states)
    index = {s: n for n, s in enumerate(order)}
    out = [dict() for _ in signature]
    labels = [dict() for _ in signature]
    for src, j, dst, lab in f.edges.values():
        out[j][index[src]] = index[dst]
        labels[j][index[src]] = lab
    return CoreGraph(signature, gens, out, labels)


# -- queries

class KuroshInvariants:
    def __init__(self, free_rank: int, factor_counts: dict):
        self.free_rank = free_rank
        self.factor_counts = {o: c for o, c in sorted(factor_counts.items()) if c}

    def __eq__(self, other):
        return (
            isinstance(other, KuroshInvariants)
            and self.free_rank == other.free_rank
            and self.factor_counts == other.factor_counts
        )

    def __hash__(self):
        return hash((self.free_rank, tuple(self.factor_counts.items())))

    def __repr__(self):
        return f"KuroshInvariants(free_rank={self.free_rank}, factor_counts={self.factor_counts})"

    def klm(self):
        """(k, l, m) for signature (2,3): k free, l-k copies of Z3, m-l copies of Z2."""
        k = self.free_rank
        l3 = self.factor_counts.get(3, 0)
        l2 = self.factor_counts.get(2, 0)
        return k, k + l3, k + l3 + l2


def _orbits(graph: CoreGraph, j: int):
    """Yield (states, closed) for each orbit of factor j with at least one edge."""
    out, inn = graph.out[j], graph.inn[j]
    seen = set()
    for v in graph.states:
        if v in seen or (v not in out and v not in inn):
            continue
        start = v
        while start in inn and inn[start] != v:
            start = inn[start]
            if start == v:
                break
        orbit = [start]
        cur = start
        while cur in out and out[cur] != start:
            cur = out[cur]
            orbit.append(cur)
        closed = cur in out and out[cur] == start
        seen.update(orbit)
        yield orbit, closed


def kurosh_invariants(graph: CoreGraph) -> KuroshInvariants:
    n_vertices = len(graph.states)
    n_edges = 0
    counts: dict[int, int] = {}
    for j, k in enumerate(graph.signature):
        for orbit, closed in _orbits(graph, j):
            n_vertices += 1
            n_edges += len(orbit)
            if closed and len(orbit) < k:
                order = k // len(orbit)
                counts[order] = counts.get(order, 0) + 1
    return KuroshInvariants(n_edges - n_vertices + 1, counts)


def euler_characteristic(graph: CoreGraph) -> Fraction:
    inv = kurosh_invariants(graph)
    chi = Fraction(1 - inv.free_rank)
    for order, count in inv.factor_counts.items():
        chi -= count * (1 - Fraction(1, order))
    return chi


def group_euler_characteristic(signature) -> Fraction:
    return sum((Fraction(1, k) for k in signature), Fraction(0)) - (len(signature) - 1)


def index(graph: CoreGraph):
    """Index of the subgroup when every orbit is closed, else None (infinite)."""
    for j in range(len(graph.signature)):
        if len(graph.out[j]) != len(graph.states):
            return None
    return len(graph.states)


def member(graph: CoreGraph, w):
    """Witness (signed 1-based generator indices) of w in the subgroup, or None."""
    if isinstance(w, str):
        w = parse_word(w, graph.signature)
    w = reduce_word(w, graph.signature)
    res = graph.walk(w)
    if res is None or res[0] != 0:
        return None
    witness = res[1]
    assert evaluate_witness(witness, graph.generators, graph.signature) == w
    return witness


def format_witness(witness) -> str:
    if not witness:
        return "e"
    return " ".join(f"h{x}" if x > 0 else f"h{-x}^-1" for x in witness)


def _contains_all(graph: CoreGraph, words) -> bool:
    return all(graph.walk(w) is not None and graph.walk(w)[0] == 0 for w in words)


def equal(g1: CoreGraph, g2: CoreGraph) -> bool:
    if g1.signature != g2.signature:
        raise ValueError("signature mismatch")
    return _contains_all(g1, g2.generators) and _contains_all(g2, g1.generators)


def conjugate_generators(g, words, signature):
    gi = inverse_word(g, signature)
    return [mul_words(signature, g, w, gi) for w in words]


def conjugators(g1: CoreGraph, g2: CoreGraph, first_only: bool = False):
    """Words g with g H2 g^-1 = H1, one per basepoint relocation that works."""
    if g1.signature != g2.signature:
        raise ValueError("signature mismatch")
    sig = g1.signature
    if kurosh_invariants(g1) != kurosh_invariants(g2):
        return []
    found = []
    seen = set()
    p1s = g1.paths_from_base()
    p2s = g2.paths_from_base()
    candidates = [()] + [
        mul_words(sig, p1, inverse_word(p2, sig)) for p1 in p1s.values() for p2 in p2s.values()
    ]
    for g in candidates:
        if g in seen:
            continue
        seen.add(g)
        gi = inverse_word(g, sig)
        if _contains_all(g1, conjugate_generators(g, g2.generators, sig)) and _contains_all(
            g2, conjugate_generators(gi, g1.generators, sig)
        ):
            found.append(g)
            if first_only:
                break
    return found


def conjugate_subgroups(g1: CoreGraph, g2: CoreGraph):
    """Some word g with g H2 g^-1 = H1, or None."""
    found = conjugators(g1, g2, first_only=True)
    if not found:
        return None
    g = found[0]
    assert equal(g1, build(g1.signature, conjugate_generators(g, g2.generators, g1.signature)))
    return g

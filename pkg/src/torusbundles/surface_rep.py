"""Representations of a closed surface group into SL(2,Z) and PSL(2,Z).

A representation of genus g is the tuple of images (A_1, B_1, ..., A_g, B_g) of
the standard generators, subject to [A_1,B_1]...[A_g,B_g] = E.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import freeprod
from .sl2z import (
    E,
    INFINITE,
    MINUS_E,
    Mat,
    lift,
    order,
    project,
    psl_inv,
    psl_mul,
    psl_order,
)

PSL_SIGNATURE = (2, 3)


@dataclass(frozen=True)
class SlRep:
    pairs: tuple  # ((A_1, B_1), ..., (A_g, B_g))

    @property
    def genus(self) -> int:
        return len(self.pairs)

    def images(self) -> list[Mat]:
        return [m for pair in self.pairs for m in pair]

    def conjugate(self, q: Mat) -> SlRep:
        qi = q.inv()
        return SlRep(tuple((q * a * qi, q * b * qi) for a, b in self.pairs))


@dataclass(frozen=True)
class PslRep:
    pairs: tuple  # pairs of PSL words

    @property
    def genus(self) -> int:
        return len(self.pairs)

    def images(self) -> list[tuple]:
        return [w for pair in self.pairs for w in pair]


@dataclass(frozen=True)
class NormalFormCertificate:
    k: int
    l: int
    m: int
    betas: tuple


@dataclass(frozen=True)
class LiftOrbitTag:
    minus_in_image: bool
    data: tuple  # signs eps_1..eps_k, or the matrices B_1..B_k

    def __str__(self) -> str:
        if self.minus_in_image:
            return "MinusInImage(" + ",".join("+1" if e > 0 else "-1" for e in self.data) + ")"
        return "MinusFree(" + ",".join(str(b) for b in self.data) + ")"


def validate(r) -> bool:
    if isinstance(r, SlRep):
        out = E
        for a, b in r.pairs:
            out = out * a * b * a.inv() * b.inv()
        return out == E
    out: tuple = ()
    for x, y in r.pairs:
        out = psl_mul(out, x, y, psl_inv(x), psl_inv(y))
    return out == ()


def project_rep(r: SlRep) -> PslRep:
    if not validate(r):
        raise ValueError("surface relator fails")
    return PslRep(tuple((project(a), project(b)) for a, b in r.pairs))


def is_normal_form(r: PslRep):
    """Certificate when alpha-images are trivial and beta-images form a free-product basis."""
    if any(x for x, _ in r.pairs):
        return None
    betas = [y for _, y in r.pairs]
    rank = {INFINITE: 0, 3: 1, 2: 2, 1: 3}
    kinds = [rank[psl_order(y)] for y in betas]
    if kinds != sorted(kinds):
        return None
    k = kinds.count(0)
    l = k + kinds.count(1)
    m = l + kinds.count(2)
    graph = freeprod.build(PSL_SIGNATURE, [freeprod.word_from_psl(y) for y in betas[:m]])
    if freeprod.kurosh_invariants(graph).klm() != (k, l, m):
        return None
    return NormalFormCertificate(k, l, m, tuple(betas))


def orbit_invariant(r: PslRep) -> freeprod.CoreGraph:
    return freeprod.build(PSL_SIGNATURE, [freeprod.word_from_psl(w) for w in r.images() if w])


# -- sign tracking

def _eval_free(word, mats) -> Mat:
    out = E
    for x in word:
        m = mats[abs(x) - 1]
        out = out * (m if x > 0 else m.inv())
    return out


class SignedImage:
    """The subgroup of SL(2,Z) generated by `mats`, studied through its projection.

    When -E is not in the subgroup, projection is injective on it, and `lift_of`
    returns the unique element over a given PSL element.
    """

    def __init__(self, mats):
        self.mats = [m for m in mats if m != E]
        words = [project(m) for m in self.mats]
        self.nontrivial = [m for m, w in zip(self.mats, words) if w]
        self.graph = freeprod.build(
            PSL_SIGNATURE, [freeprod.word_from_psl(project(m)) for m in self.nontrivial]
        )
        self.contains_minus = any(m == MINUS_E for m in self.mats) or self._sign_defect()

    def _sign_defect(self) -> bool:
        g = self.graph
        for i, m in enumerate(self.nontrivial):
            wit = freeprod.member(g, g.generators[i])
            if _eval_free(wit, self.nontrivial) != m:
                return True
        for j, k in enumerate(PSL_SIGNATURE):
            for orbit, closed in freeprod._orbits(g, j):
                if not closed:
                    continue
                prod = E
                for v in orbit:
                    prod = prod * _eval_free(g.labels[j][v], self.nontrivial)
                if prod ** (k // len(orbit)) != E:
                    return True
        return False

    def lift_of(self, w):
        """Element of the subgroup over the PSL word w, or None if w is not in the projection."""
        wit = freeprod.member(self.graph, freeprod.word_from_psl(w))
        if wit is None:
            return None
        return _eval_free(wit, self.nontrivial)

    def contains(self, m: Mat) -> bool:
        over = self.lift_of(project(m))
        if over is None:
            return False
        return self.contains_minus or over == m


def contains_minus_identity(r: SlRep) -> bool:
    return SignedImage(r.images()).contains_minus


def minus_identity_by_criterion(r: SlRep) -> bool:
    """Normal-form criterion: -E is missing iff every A_i = E and no B_i has order 2, 4 or 6."""
    return any(a == MINUS_E for a, _ in r.pairs) or any(order(b) in (2, 4, 6) for _, b in r.pairs)


def same_image(x, y) -> bool:
    """Whether two finite lists of matrices generate the same subgroup."""
    hx, hy = SignedImage(x), SignedImage(y)
    return all(hx.contains(m) for m in hy.mats) and all(hy.contains(m) for m in hx.mats)


# -- lifts

def enumerate_lifts(r: PslRep) -> list[SlRep]:
    base = [lift(w) for w in r.images()]
    out = []
    for signs in itertools.product((1, -1), repeat=len(base)):
        mats = [m if s == 1 else -m for m, s in zip(base, signs)]
        out.append(SlRep(tuple((mats[2 * i], mats[2 * i + 1]) for i in range(r.genus))))
    return out


def canonicalize_lift(r: SlRep) -> SlRep:
    """Equivalent lift with ord(B_i) = 3 on the order-3 block, A_i = -E on the order-2 block,
    and B_i = E past it.  The infinite-order block is left alone."""
    cert = is_normal_form(project_rep(r))
    if cert is None:
        raise ValueError("projection is not in normal form")
    pairs = []
    for i, (a, b) in enumerate(r.pairs):
        if cert.k <= i < cert.l and order(b) == 6:
            a, b = MINUS_E, -b
        elif cert.l <= i < cert.m:
            a = MINUS_E
        elif i >= cert.m and b == MINUS_E:
            a, b = MINUS_E, E
        pairs.append((a, b))
    return SlRep(tuple(pairs))


def lift_orbit_tag(r: SlRep) -> LiftOrbitTag:
    cert = is_normal_form(project_rep(r))
    if cert is None:
        raise ValueError("projection is not in normal form")
    if canonicalize_lift(r) != r:
        raise ValueError("lift is not canonicalized")
    if contains_minus_identity(r):
        return LiftOrbitTag(True, tuple(1 if a == E else -1 for a, _ in r.pairs[: cert.k]))
    return LiftOrbitTag(False, tuple(b for _, b in r.pairs[: cert.k]))


def orbit_census(r: PslRep) -> set:
    """Distinct orbit tags over all lifts of a normal-form PSL representation."""
    return {lift_orbit_tag(canonicalize_lift(x)) for x in enumerate_lifts(r)}

"""Orientable torus bundles M(A_1, B_1, ..., A_g, B_g; m, n) over closed surfaces.

Isomorphism decisions return an `IsoVerdict` whose certificates can be
re-checked by `verify_certificate` using nothing but matrix and vector
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from . import freeprod
from .intlattice import (
    ext_gcd,
    in_rational_span,
    member_with_witness,
    quotient,
    rank,
    smith_normal_form,
)
from .sl2z import (
    E,
    INFINITE,
    MINUS_E,
    SHEAR,
    S,
    Mat,
    centralizer_root,
    conj,
    cyclic_core,
    lift,
    order,
    project,
    psl_inv,
    psl_mul,
    psl_conjugate,
    psl_order,
    sl_conjugate,
)
from .surface_rep import (
    SignedImage,
    SlRep,
    canonicalize_lift,
    is_normal_form,
    lift_orbit_tag,
    project_rep,
    validate,
)

CENTRALIZER_SWEEP = 8
ORBIT_LIMIT = 20000


@dataclass(frozen=True)
class TorusBundle:
    rep: SlRep
    euler: tuple = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "euler", tuple(self.euler))
        if len(self.euler) != 2 or not all(isinstance(x, int) for x in self.euler):
            raise ValueError("euler vector must be two integers")
        if not validate(self.rep):
            raise ValueError("surface relator fails")

    @classmethod
    def of(cls, pairs, euler=(0, 0)) -> TorusBundle:
        return cls(SlRep(tuple((a, b) for a, b in pairs)), tuple(euler))

    @property
    def genus(self) -> int:
        return self.rep.genus


@dataclass
class IsoVerdict:
    answer: str  # "yes", "no" or "indeterminate"
    certificate: dict = field(default_factory=dict)
    failed_condition: int | None = None
    reason: str = ""

    @property
    def is_yes(self) -> bool:
        return self.answer == "yes"


def _yes(**cert) -> IsoVerdict:
    return IsoVerdict("yes", cert)


def _no(condition: int, reason: str) -> IsoVerdict:
    return IsoVerdict("no", failed_condition=condition, reason=reason)


def _unknown(reason: str) -> IsoVerdict:
    return IsoVerdict("indeterminate", reason=reason)


# -- Euler class

def _columns(m: Mat):
    d = m.minus_identity()
    return [(d[0][0], d[1][0]), (d[0][1], d[1][1])]


def euler_generators(rep: SlRep) -> list:
    return [c for m in rep.images() for c in _columns(m)]


def euler_module(rep: SlRep):
    return quotient(euler_generators(rep))


def euler_torsion(b: TorusBundle) -> bool:
    return in_rational_span(b.euler, euler_generators(b.rep))


def betti1_flat(rep: SlRep) -> int:
    gens = euler_generators(rep)
    x = [[g[0] for g in gens], [g[1] for g in gens]] if gens else [[], []]
    return 2 * rep.genus + 2 - rank(x)


# -- fiber sums

def fiber_sum(b1: TorusBundle, b2: TorusBundle) -> TorusBundle:
    return TorusBundle(
        SlRep(b1.rep.pairs + b2.rep.pairs),
        (b1.euler[0] + b2.euler[0], b1.euler[1] + b2.euler[1]),
    )


def decompose(b: TorusBundle) -> list:
    if b.genus < 1:
        raise ValueError("genus must be at least 1")
    if any(a not in (E, MINUS_E) for a, _ in b.rep.pairs):
        raise ValueError("every A_i must be +-E")
    pieces = []
    for i, pair in enumerate(b.rep.pairs):
        pieces.append(TorusBundle(SlRep((pair,)), b.euler if i == 0 else (0, 0)))
    return pieces


# -- helpers on vectors and lattices

def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _primitive_completion(v) -> Mat:
    """Matrix in SL(2,Z) with first column v / gcd(v)."""
    d = gcd(v[0], v[1])
    a, c = v[0] // d, v[1] // d
    _, x, y = ext_gcd(a, c)
    # a x + c y = 1  ->  [[a, -y], [c, x]]
    return Mat(a, -y, c, x)


class _ClassMap:
    """Canonical representatives of Z^2 modulo a lattice."""

    def __init__(self, gens):
        self.gens = list(gens)
        if not self.gens:
            self.u, self.diag = [[1, 0], [0, 1]], [0, 0]
            return
        m = [[g[0] for g in self.gens], [g[1] for g in self.gens]]
        u, d, _ = smith_normal_form(m)
        self.u = u
        self.diag = [d[i][i] if i < len(d[0]) else 0 for i in range(2)]

    def key(self, v):
        y = [self.u[i][0] * v[0] + self.u[i][1] * v[1] for i in range(2)]
        return tuple(y[i] % self.diag[i] if self.diag[i] else y[i] for i in range(2))


def _centralizer_gens(b: Mat) -> list:
    if b in (E, MINUS_E):
        return [S, SHEAR, MINUS_E]
    z = lift(centralizer_root(project(b)))
    if conj(z, b) != b:
        z = z * z
    return [z, z.inv(), MINUS_E]


def _orbit_search(cent_gens, q0s, target, source, lattice):
    """Find Q = Z q0 (Z in the group generated by cent_gens) with target - Q source in lattice.

    Returns (Q, coefficients), or None when the orbit is exhausted, or "limit".
    """
    classes = _ClassMap(lattice)
    goal = classes.key(target)
    for q0 in q0s:
        start = q0
        seen = {classes.key(start.apply(source)): start}
        frontier = [start]
        while frontier:
            nxt = []
            for q in frontier:
                if classes.key(q.apply(source)) == goal:
                    coeffs = member_with_witness(_sub(target, q.apply(source)), lattice)
                    if coeffs is not None:
                        return q, coeffs
                for z in cent_gens:
                    p = z * q
                    key = classes.key(p.apply(source))
                    if key not in seen:
                        seen[key] = p
                        nxt.append(p)
            if len(seen) > ORBIT_LIMIT:
                return "limit"
            frontier = nxt
    return None


# -- genus 0

def iso_genus0(b1: TorusBundle, b2: TorusBundle) -> IsoVerdict:
    if b1.genus != 0 or b2.genus != 0:
        raise ValueError("genus 0 bundles expected")
    d1, d2 = gcd(*b1.euler), gcd(*b2.euler)
    if d1 != d2:
        return _no(3, f"gcd of Euler vectors differ: {d1} vs {d2}")
    if d1 == 0:
        return _yes(Q=E)
    q = _primitive_completion(b1.euler) * _primitive_completion(b2.euler).inv()
    return _yes(Q=q)


# -- genus 1

def _log_in_cyclic(w, root):
    """Exponent x with w = root^x in PSL, for w in the cyclic group of root."""
    if not w:
        return 0
    core_w, _ = cyclic_core(w)
    core_r, _ = cyclic_core(root)
    if psl_order(root) == INFINITE:
        n = len(core_w) // len(core_r)
        candidates = (n, -n)
    else:
        candidates = range(1, psl_order(root))
    for x in candidates:
        p: tuple = ()
        for _ in range(abs(x)):
            p = psl_mul(p, root if x > 0 else psl_inv(root))
        if p == w:
            return x
    return None


def normalize_genus1(b: TorusBundle):
    """Equivalent bundle M(+-E, B; m, n) and the mapping class P used, or None.

    With P = [[p, r], [q, s]] the new pair is (A^p B^q, A^r B^s); the Euler
    vector is unchanged.
    """
    if b.genus != 1:
        raise ValueError("genus 1 bundle expected")
    a, bb = b.rep.pairs[0]
    if a in (E, MINUS_E):
        return b, E
    if bb in (E, MINUS_E):
        p, q = 0, 1
    else:
        root = centralizer_root(project(a))
        x = _log_in_cyclic(project(a), root)
        y = _log_in_cyclic(project(bb), root)
        if x is None or y is None:
            return None
        g = gcd(x, y)
        p, q = y // g, -x // g
    _, s, r_neg = ext_gcd(p, q)
    # p s + q r_neg = 1 -> r = -r_neg
    r = -r_neg
    mc = Mat(p, r, q, s)
    new_a = a**p * bb**q
    new_b = a**r * bb**s
    if new_a not in (E, MINUS_E):
        return None
    return TorusBundle(SlRep(((new_a, new_b),)), b.euler), mc


def _genus1_normalized(n1: TorusBundle, n2: TorusBundle):
    (a1, bm), = n1.rep.pairs
    (a2, cm), = n2.rep.pairs
    eps = 1 if a1 == E else -1
    dlt = 1 if a2 == E else -1
    v1, v2 = n1.euler, n2.euler
    finite_sign = (2, 4, 6)
    if eps == 1 and dlt == 1:
        case, targets, base, swapped = 1, [bm, bm.inv()], bm, False
    elif eps == 1 and dlt == -1:
        if order(bm) not in finite_sign:
            return _no(1, "-E lies in the second monodromy group only")
        case, targets, base, swapped = 2, [bm, bm.inv(), -bm, -bm.inv()], bm, False
    elif eps == -1 and dlt == 1:
        if order(cm) not in finite_sign:
            return _no(1, "-E lies in the first monodromy group only")
        case, targets, base, swapped = 3, [cm, cm.inv(), -cm, -cm.inv()], cm, True
    else:
        case, targets, base, swapped = 4, [bm, bm.inv(), -bm, -bm.inv()], bm, False
    src_mat = bm if swapped else cm
    if swapped:
        v1, v2 = v2, v1
    q0s = []
    for tgt in targets:
        q = sl_conjugate(src_mat, tgt)
        if q is not None:
            q0s.append(q)
    if not q0s:
        return _no(1, "monodromies are not conjugate as required")
    lattice = _columns(base) + ([(2, 0), (0, 2)] if case == 4 else [])
    if base == E and case == 1:
        # lattice is zero: need Q v2 = v1 exactly
        if gcd(*v1) != gcd(*v2):
            return _no(3, "Euler vectors have different gcd")
        q = E if gcd(*v1) == 0 else _primitive_completion(v1) * _primitive_completion(v2).inv()
        found = (q, [0, 0])
    else:
        found = _orbit_search(_centralizer_gens(base), q0s, v1, v2, lattice)
    if found == "limit":
        return _unknown("centralizer orbit search exceeded its bound")
    if found is None:
        return _no(3, "Euler classes do not match for any admissible Q")
    q, coeffs = found
    cert = {"case": case, "Q": q, "x": (coeffs[0], coeffs[1])}
    if case == 4:
        cert["y"] = (coeffs[2], coeffs[3])
    return _yes(**cert)


def iso_genus1(b1: TorusBundle, b2: TorusBundle) -> IsoVerdict:
    if b1.genus != 1 or b2.genus != 1:
        raise ValueError("genus 1 bundles expected")
    r1, r2 = normalize_genus1(b1), normalize_genus1(b2)
    if r1 is None or r2 is None:
        return _unknown("normalization to A = +-E failed")
    n1, p1 = r1
    n2, p2 = r2
    verdict = _genus1_normalized(n1, n2)
    if verdict.is_yes:
        verdict.certificate.update(P1=p1, P2=p2, normalized=(n1, n2))
    return verdict


# -- genus >= 2

def _aligning_words(images1, images2):
    """PSL words x with x images2 x^-1 = images1 entrywise; also whether the search was exhaustive."""
    w1 = [project(m) for m in images1]
    w2 = [project(m) for m in images2]
    if [bool(x) for x in w1] != [bool(x) for x in w2]:
        return [], True
    idx = next((i for i, x in enumerate(w2) if x), None)
    if idx is None:
        return [()], True
    x0 = psl_conjugate(w2[idx], w1[idx])
    if x0 is None:
        return [], True
    root = centralizer_root(w2[idx])
    finite = psl_order(root) != INFINITE
    exps = range(psl_order(root)) if finite else range(-CENTRALIZER_SWEEP, CENTRALIZER_SWEEP + 1)
    found = []
    for j in sorted(exps, key=abs):
        c: tuple = ()
        for _ in range(abs(j)):
            c = psl_mul(c, root if j > 0 else psl_inv(root))
        x = psl_mul(x0, c)
        xi = psl_inv(x)
        if all(psl_mul(x, b, xi) == a for a, b in zip(w1, w2)):
            found.append(x)
    return found, finite


def _membership_witnesses(target: SignedImage, mats):
    """Free words over target's generators evaluating to each of mats, or None."""
    out = []
    for m in mats:
        if m == E:
            out.append(())
            continue
        if not target.contains(m):
            return None
        over = target.lift_of(project(m))
        wit = freeprod.member(target.graph, freeprod.word_from_psl(project(m)))
        if over != m:
            # -E is in the image; append a word for it
            wit = wit + _minus_word(target)
        out.append(wit)
    return out


def _witness_generators(mats) -> list:
    """Generators that membership witnesses index into: the images with nontrivial
    projection, then -E when it is itself one of the images."""
    gens = [m for m in mats if project(m)]
    return gens + [MINUS_E] if MINUS_E in mats else gens


def _minus_word(target: SignedImage):
    """A free word over the witness generators of target evaluating to -E."""
    if MINUS_E in target.mats:
        return (len(target.nontrivial) + 1,)
    for i, m in enumerate(target.nontrivial):
        wit = freeprod.member(target.graph, target.graph.generators[i])
        if _eval_word(wit, target.nontrivial) != m:
            # m^-1 * eval(wit) = -E
            return (-(i + 1),) + wit
    g = target.graph
    paths = g.paths_from_base()
    for j, k in enumerate(g.signature):
        for orbit, closed in freeprod._orbits(g, j):
            if not closed:
                continue
            to_v = g.walk(paths[orbit[0]])[1]
            loop: tuple = ()
            for u in orbit:
                loop = loop + g.labels[j][u]
            word = to_v + loop * (k // len(orbit)) + tuple(-x for x in reversed(to_v))
            if _eval_word(word, target.nontrivial) == MINUS_E:
                return word
    raise AssertionError("no word for -E found")


def _sl_images_equal(h1: SignedImage, mats1, q: Mat, mats2):
    """Witness lists proving <mats1> = q <mats2> q^-1, or None."""
    qm = [conj(q, m) for m in mats2]
    h2 = SignedImage(qm)
    fwd = _membership_witnesses(h1, qm)
    if fwd is None:
        return None
    back = _membership_witnesses(h2, mats1)
    if back is None:
        return None
    return fwd, back


def _condition3_lattice(rep: SlRep):
    gens = [c for _, b in rep.pairs for c in _columns(b)]
    if any(a == MINUS_E for a, _ in rep.pairs):
        gens = [(2, 0), (0, 2)] + gens
    return gens


def _image_centralizer_gens(rep: SlRep) -> list:
    """Generators of the SL centralizer of the image (up to what the cond-3 sweep needs)."""
    words = [w for w in (project(m) for m in rep.images()) if w]
    if not words:
        return [S, SHEAR, MINUS_E]
    root = centralizer_root(words[0])
    if all(psl_mul(root, w, psl_inv(root)) == w for w in words):
        z = lift(root)
        if all(conj(z, m) == m for m in rep.images()):
            return [z, z.inv(), MINUS_E]
        z2 = z * z
        if all(conj(z2, m) == m for m in rep.images()):
            return [z2, z2.inv(), MINUS_E]
    return [MINUS_E]


def iso_main(b1: TorusBundle, b2: TorusBundle) -> IsoVerdict:
    if b1.genus != b2.genus:
        raise ValueError("genus mismatch")
    if b1.genus < 2:
        raise ValueError("genus at least 2 expected")
    for b in (b1, b2):
        if is_normal_form(project_rep(b.rep)) is None:
            raise ValueError("projection is not in normal form")
    mats1, mats2 = b1.rep.images(), b2.rep.images()
    h1, h2 = SignedImage(mats1), SignedImage(mats2)
    if h1.contains_minus != h2.contains_minus:
        return _no(1, "-E lies in exactly one of the monodromy groups")
    pconj = freeprod.conjugators(h1.graph, h2.graph)
    if not pconj:
        return _no(1, "projected monodromy groups are not conjugate")
    sl_ok = [
        q for q in (lift(freeprod.word_to_psl(g)) for g in pconj)
        if _sl_images_equal(h1, mats1, q, mats2) is not None
    ]
    if not sl_ok:
        return _no(1, "no conjugator matches the monodromy groups with signs")

    aligned, exhaustive = _aligning_words(mats1, mats2)
    if not aligned:
        return _unknown(
            "monodromy groups are conjugate but no conjugator aligns the projected "
            "representations entrywise"
            + ("" if exhaustive else f" within exponent {CENTRALIZER_SWEEP}")
        )
    tag1 = lift_orbit_tag(canonicalize_lift(b1.rep))
    failed = 1
    for x in aligned:
        q = lift(x)
        wits = _sl_images_equal(h1, mats1, q, mats2)
        if wits is None:
            continue
        failed = max(failed, 2)
        rep2q = b2.rep.conjugate(q)
        tag2 = lift_orbit_tag(canonicalize_lift(rep2q))
        if tag1 != tag2:
            continue
        failed = 3
        lattice = _condition3_lattice(b1.rep)
        found = _orbit_search(_image_centralizer_gens(b1.rep), [q], b1.euler, b2.euler, lattice)
        if found == "limit":
            return _unknown("centralizer orbit search exceeded its bound")
        if found is None:
            continue
        qq, coeffs = found
        wits = _sl_images_equal(h1, mats1, qq, mats2)
        if wits is None:
            continue
        x0 = (0, 0)
        if any(a == MINUS_E for a, _ in b1.rep.pairs):
            x0, coeffs = (coeffs[0], coeffs[1]), coeffs[2:]
        xs = [(coeffs[2 * i], coeffs[2 * i + 1]) for i in range(b1.genus)]
        return _yes(Q=qq, x0=x0, x=xs, forward=wits[0], backward=wits[1], tag=str(tag1))
    reasons = {
        1: "aligned conjugators do not match the monodromy groups with signs",
        2: "lift orbit tags differ",
        3: "Euler classes do not match",
    }
    return _no(failed, reasons[failed])


def iso(b1: TorusBundle, b2: TorusBundle) -> IsoVerdict:
    if b1.genus != b2.genus:
        return _no(1, "base genera differ")
    if b1.genus == 0:
        return iso_genus0(b1, b2)
    if b1.genus == 1:
        return iso_genus1(b1, b2)
    return iso_main(b1, b2)


# -- certificate checking, by direct arithmetic only

def _eval_word(word, mats) -> Mat:
    out = E
    for x in word:
        m = mats[abs(x) - 1]
        out = out * (m if x > 0 else m.inv())
    return out


def _cols_times(m: Mat, x):
    d = m.minus_identity()
    return (d[0][0] * x[0] + d[0][1] * x[1], d[1][0] * x[0] + d[1][1] * x[1])


def verify_certificate(b1: TorusBundle, b2: TorusBundle, verdict: IsoVerdict) -> bool:
    if not verdict.is_yes:
        return False
    c = verdict.certificate
    q = c["Q"]
    if b1.genus == 0:
        return q.apply(b2.euler) == tuple(b1.euler)
    if b1.genus == 1:
        n1, n2 = c["normalized"]
        for b, n, p in ((b1, n1, c["P1"]), (b2, n2, c["P2"])):
            (a, bb), = b.rep.pairs
            if n.euler != b.euler:
                return False
            if n.rep.pairs[0] != (a**p.a * bb**p.c, a**p.b * bb**p.d):
                return False
        (a1, bm), = n1.rep.pairs
        (a2, cm), = n2.rep.pairs
        case = c["case"]
        if case == 3:
            lhs = _sub(n2.euler, q.apply(n1.euler))
            if conj(q, bm) not in (cm, cm.inv(), -cm, -cm.inv()):
                return False
            return lhs == _cols_times(cm, c["x"])
        allowed = (bm, bm.inv()) if case == 1 else (bm, bm.inv(), -bm, -bm.inv())
        if conj(q, cm) not in allowed:
            return False
        lhs = _sub(n1.euler, q.apply(n2.euler))
        rhs = _cols_times(bm, c["x"])
        if case == 4:
            rhs = (rhs[0] + 2 * c["y"][0], rhs[1] + 2 * c["y"][1])
        return lhs == rhs
    qm = [conj(q, m) for m in b2.rep.images()]
    h1_gens = _witness_generators(b1.rep.images())
    h2_gens = _witness_generators(qm)
    if any(_eval_word(w, h1_gens) != m for w, m in zip(c["forward"], qm)):
        return False
    if any(_eval_word(w, h2_gens) != m for w, m in zip(c["backward"], b1.rep.images())):
        return False
    rhs = (2 * c["x0"][0], 2 * c["x0"][1])
    for (_, b), x in zip(b1.rep.pairs, c["x"]):
        t = _cols_times(b, x)
        rhs = (rhs[0] + t[0], rhs[1] + t[1])
    if rhs != _sub(b1.euler, q.apply(b2.euler)):
        return False
    tag2 = lift_orbit_tag(canonicalize_lift(b2.rep.conjugate(q)))
    return str(tag2) == c["tag"]


# -- symplectic predicates

def _common_fixed(rep: SlRep):
    """Dimension of the common fixed space and a primitive spanning vector when it is 1."""
    rows = []
    for m in rep.images():
        d = m.minus_identity()
        rows.extend(d)
    r = rank(rows) if rows else 0
    if r != 1:
        return 2 - r, None
    a, b = next(row for row in rows if any(row))
    g = gcd(a, b)
    return 1, (b // g, -a // g)


def compatible_symplectic(b: TorusBundle) -> bool:
    return euler_torsion(b)


def in_excluded_family(b: TorusBundle) -> bool:
    """Whether b is isomorphic to M(E,..,E; m, 0) with m != 0 or M(E, C^k, E, .., E; m, n) with n != 0."""
    dim, q = _common_fixed(b.rep)
    v = b.euler
    if dim == 2:
        return v != (0, 0)
    if dim == 1:
        return q[0] * v[1] - q[1] * v[0] != 0
    return False


def total_space_symplectic(b: TorusBundle) -> bool:
    if b.genus == 1:
        return True
    dim, q = _common_fixed(b.rep)
    v = b.euler
    if dim == 2:
        return v == (0, 0)
    if dim == 1 and b.genus >= 2:
        return q[0] * v[1] - q[1] * v[0] == 0
    return True

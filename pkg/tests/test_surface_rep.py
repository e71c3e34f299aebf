import itertools

import pytest

from torusbundles import freeprod as fp
from torusbundles.sl2z import E, MINUS_E, SHEAR, S, T, parse_psl_word
from torusbundles.surface_rep import (
    PslRep,
    SlRep,
    canonicalize_lift,
    contains_minus_identity,
    enumerate_lifts,
    is_normal_form,
    lift_orbit_tag,
    minus_identity_by_criterion,
    orbit_census,
    orbit_invariant,
    project_rep,
    same_image,
    validate,
)

C = SHEAR


def psl(*pairs):
    return PslRep(tuple((parse_psl_word(x), parse_psl_word(y)) for x, y in pairs))


def test_validate_examples():
    assert not validate(SlRep(((S, T),)))
    assert validate(SlRep(((MINUS_E, T),)))
    assert validate(SlRep(((E, S), (E, T))))
    assert not validate(psl(("a", "b")))


def test_project_rep_examples():
    assert project_rep(SlRep(((MINUS_E, T),))) == psl(("", "b"))
    assert project_rep(SlRep(((S, S),))) == psl(("a", "a"))
    assert project_rep(SlRep(((E, C), (E, S)))) == psl(("", "b2 a"), ("", "a"))
    with pytest.raises(ValueError):
        project_rep(SlRep(((S, T),)))


def test_normal_form_examples():
    assert is_normal_form(psl(("a", ""))) is None
    cert = is_normal_form(psl(("", "")))
    assert (cert.k, cert.l, cert.m) == (0, 0, 0)
    cert = is_normal_form(psl(("", "a b"), ("", "b a b2")))
    assert (cert.k, cert.l, cert.m) == (1, 1, 2)


def test_normal_form_rejects_non_basis():
    # a = (a b) b2, so <a b, b> is the whole group and not a free product Z * Z3
    assert is_normal_form(psl(("", "a b"), ("", "b"))) is None
    # blocks out of order
    assert is_normal_form(psl(("", "b"), ("", "a b"))) is None


def test_orbit_invariant_examples():
    trivial = orbit_invariant(psl(("", "")))
    assert fp.kurosh_invariants(trivial) == fp.KuroshInvariants(0, {})
    assert fp.member(trivial, "a") is None
    assert fp.equal(orbit_invariant(psl(("", "b"))), orbit_invariant(psl(("b2", "b"))))
    full = orbit_invariant(psl(("", "b"), ("", "a")))
    assert fp.kurosh_invariants(full).klm() == (0, 1, 2)


def test_minus_identity_examples():
    assert not contains_minus_identity(SlRep(((E, C), (E, E))))
    assert contains_minus_identity(SlRep(((E, S), (E, E))))
    assert contains_minus_identity(SlRep(((MINUS_E, C), (E, E))))


def test_minus_identity_general_reps():
    # <C, -C> contains -E although no generator is -E
    assert contains_minus_identity(SlRep(((E, C), (E, -C))))
    # -t has order 3
    assert not contains_minus_identity(SlRep(((E, -T),)))
    assert contains_minus_identity(SlRep(((E, T),)))


def test_minus_identity_criterion_agrees_on_normal_forms():
    corpus = [
        psl(("", ""), ("", "")),
        psl(("", "a b"), ("", "")),
        psl(("", "b"), ("", "")),
        psl(("", "a"), ("", "")),
        psl(("", "a b"), ("", "b a b2")),
        psl(("", "b"), ("", "a")),
    ]
    for rep in corpus:
        for lift in enumerate_lifts(rep):
            assert contains_minus_identity(lift) == minus_identity_by_criterion(lift)


def test_same_image():
    assert same_image([C], [C.inv()])
    assert not same_image([C], [-C])
    assert same_image([S], [S.inv(), E])
    assert not same_image([T], [-T])


def test_canonicalize_examples():
    assert canonicalize_lift(SlRep(((E, -T),))) == SlRep(((E, -T),))
    assert canonicalize_lift(SlRep(((E, T),))) == SlRep(((MINUS_E, -T),))
    assert canonicalize_lift(SlRep(((E, S),))) == SlRep(((MINUS_E, S),))
    with pytest.raises(ValueError):
        canonicalize_lift(SlRep(((S, S),)))


def test_orbit_tag_examples():
    assert str(lift_orbit_tag(SlRep(((E, C), (MINUS_E, E))))) == "MinusInImage(+1)"
    assert str(lift_orbit_tag(SlRep(((E, C), (E, E))))) == "MinusFree([[1,1],[0,1]])"
    neg = lift_orbit_tag(SlRep(((MINUS_E, C), (E, E))))
    pos = lift_orbit_tag(SlRep(((E, C), (MINUS_E, E))))
    assert str(neg) == "MinusInImage(-1)" and neg != pos
    assert lift_orbit_tag(SlRep(((E, C), (E, E)))) != lift_orbit_tag(SlRep(((E, -C), (E, E))))


def test_orbit_tag_requires_canonical_input():
    with pytest.raises(ValueError):
        lift_orbit_tag(SlRep(((E, S), (E, E))))


def test_enumerate_lifts():
    assert len(enumerate_lifts(psl(("", "")))) == 4
    assert {tuple(r.pairs[0]) for r in enumerate_lifts(psl(("", "")))} == set(
        itertools.product((E, MINUS_E), repeat=2)
    )
    reps = enumerate_lifts(psl(("", "a b"), ("", "b a b2")))
    assert len(reps) == 16 and all(validate(r) for r in reps)
    assert enumerate_lifts(PslRep(())) == [SlRep(())]


def test_census_small():
    assert len(orbit_census(psl(("", "a b"), ("", "")))) == 4
    assert len(orbit_census(psl(("", "b"), ("", "a")))) == 1

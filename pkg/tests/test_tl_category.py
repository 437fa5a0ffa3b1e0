"""Linear 2-morphisms: composition with circle evaluation, juxtaposition, flip."""

from __future__ import annotations

import random

import pytest

from colortl.diagrams import (
    cap_diagram,
    check_word,
    cup_diagram,
    enumerate_colored,
    identity_diagram,
)
from colortl.rings import CartanMatrix, PrimeField, quantum_number
from colortl.tl_category import (
    InvariantViolation,
    TLMorphism,
    apply_cap,
    apply_cup,
    compose,
    elementary_e,
    hom_basis,
    involution,
    juxtapose,
    partial_trace_last,
)

SYM = CartanMatrix.symmetric_delta(("b", "g", "r", "y"))
QD = SYM.ring
DELTA = QD.delta


def test_identity_is_neutral():
    x = check_word("rbrg")
    ident = TLMorphism.identity(x, SYM)
    for d in enumerate_colored(x, x):
        f = TLMorphism.from_diagram(d, SYM)
        assert compose(f, ident) == f
        assert compose(ident, f) == f


def test_e_squared_is_minus_delta_e():
    x = check_word("rbr")
    e = elementary_e(x, 1, SYM)
    assert compose(e, e) == e.scale(-DELTA)


def test_two_e_generators_braid_like_relation():
    # e1 e2 e1 = e1 on rbrb (nested cap/cup cancellation, no circle)
    x = check_word("rbrb")
    e1 = elementary_e(x, 1, SYM)
    e2 = elementary_e(x, 2, SYM)
    assert compose(e1, compose(e2, e1)) == e1
    assert compose(e2, compose(e1, e2)) == e2


def test_circle_uses_cartan_entry():
    cm = CartanMatrix.constant(("r", "b"), ring=PrimeField(3))
    x = check_word("rbr")
    e = elementary_e(x, 1, cm)
    # circle scalar is a_{outside,inside} = -2 = 1 mod 3
    assert compose(e, e) == e.scale(cm.ring.from_int(-2))


def test_compose_rejects_mismatched_words():
    f = TLMorphism.identity(check_word("rb"), SYM)
    g = TLMorphism.identity(check_word("rg"), SYM)
    with pytest.raises(ValueError):
        compose(f, g)


def test_associativity_on_random_triples():
    rng = random.Random(424242)
    words = [check_word(w) for w in ("rbr", "rbrb", "rgr", "rbg")]
    triples = 0
    while triples < 40:
        x, y = rng.choice(words), rng.choice(words)
        z, w = rng.choice(words), rng.choice(words)
        fs = enumerate_colored(x, y)
        gs = enumerate_colored(y, z)
        hs = enumerate_colored(z, w)
        if not (fs and gs and hs):
            continue
        f = TLMorphism.from_diagram(rng.choice(list(fs)), SYM)
        g = TLMorphism.from_diagram(rng.choice(list(gs)), SYM)
        h = TLMorphism.from_diagram(rng.choice(list(hs)), SYM)
        assert compose(h, compose(g, f)) == compose(compose(h, g), f)
        triples += 1


def test_bilinearity():
    x = check_word("rbr")
    basis = [TLMorphism.from_diagram(d, SYM) for d in enumerate_colored(x, x)]
    f = basis[0] + basis[1].scale(DELTA)
    g = basis[1].scale(QD.from_int(-3))
    lhs = compose(f + g, basis[0])
    rhs = compose(f, basis[0]) + compose(g, basis[0])
    assert lhs == rhs


def test_juxtaposition_respects_edge_colors():
    left = TLMorphism.identity(check_word("rb"), SYM)
    right = TLMorphism.identity(check_word("br"), SYM)
    glued = juxtapose(left, right)
    assert glued.source == check_word("rbr")
    bad = TLMorphism.identity(check_word("gr"), SYM)
    with pytest.raises(ValueError):
        juxtapose(left, bad)


def test_juxtaposition_interchange():
    # (f2 o f1) x (g2 o g1) = (f2 x g2) o (f1 x g1) on a small sample
    x = check_word("rbr")
    e = elementary_e(x, 1, SYM)
    i = TLMorphism.identity(x, SYM)
    lhs = juxtapose(compose(e, e), compose(i, i))
    rhs = compose(juxtapose(e, i), juxtapose(e, i))
    assert lhs == rhs


def test_involution_reverses_composition():
    x = check_word("rbrb")
    e1 = elementary_e(x, 1, SYM)
    e2 = elementary_e(x, 2, SYM)
    assert involution(compose(e1, e2)) == compose(involution(e2), involution(e1))
    assert involution(involution(e1)) == e1


def test_involution_fixes_identity():
    x = check_word("grg")
    assert involution(TLMorphism.identity(x, SYM)) == TLMorphism.identity(x, SYM)


def test_apply_cap_cup_against_direct_composition():
    x = check_word("rbrb")
    e = elementary_e(x, 2, SYM)
    cap = TLMorphism.from_diagram(cap_diagram(x, 2), SYM)
    cup = TLMorphism.from_diagram(cup_diagram(x, 2), SYM)
    assert apply_cap(e, 2) == compose(cap, e)
    assert apply_cup(e, 2) == compose(e, cup)


def test_partial_trace_of_identity():
    x = check_word("rbr")
    traced = partial_trace_last(TLMorphism.identity(x, SYM))
    # closing the last strand of the identity gives -delta times the shorter identity
    assert traced == TLMorphism.identity(check_word("rb"), SYM).scale(-DELTA)


def test_partial_trace_mismatched_colors_is_zero():
    x = check_word("rbr")
    y = check_word("rbg")
    z = TLMorphism.zero(x, y, SYM)
    traced = partial_trace_last(z)
    assert traced.is_zero()
    assert traced.source == check_word("rb") and traced.target == check_word("rb")


def test_hom_basis_matches_enumeration():
    x = check_word("rbrb")
    y = check_word("rb")
    basis = hom_basis(x, y, SYM)
    assert len(basis) == len(enumerate_colored(x, y))
    for f in basis:
        assert len(f.terms) == 1


def test_zero_and_scaling():
    x = check_word("rb")
    z = TLMorphism.zero(x, x, SYM)
    assert z.is_zero()
    i = TLMorphism.identity(x, SYM)
    assert (i - i).is_zero()
    assert i.scale(0).is_zero()
    assert i.scale(QD.zero).is_zero()
    assert (i + i) == i.scale(2)


def test_identity_coefficient_and_lower_ideal():
    x = check_word("rbr")
    i = TLMorphism.identity(x, SYM)
    e = elementary_e(x, 1, SYM)
    assert i.identity_coefficient() == QD.one
    assert e.identity_coefficient().is_zero()
    assert e.in_lower_ideal()
    assert not (i + e).in_lower_ideal()


def test_json_round_trip_and_term_order():
    x = check_word("rbr")
    e = elementary_e(x, 1, SYM)
    f = TLMorphism.identity(x, SYM).scale(DELTA) + e
    doc = f.to_json()
    assert list(doc) == sorted(doc)  # canonical key order not required, but stable
    back = TLMorphism.from_json(doc, SYM)
    assert back == f
    pair_lists = [term["matching"]["pairs"] for term in doc["terms"]]
    assert pair_lists == sorted(pair_lists)


def test_from_json_rejects_wrong_ring_text():
    x = check_word("rb")
    doc = TLMorphism.identity(x, SYM).to_json()
    doc["terms"][0]["coeff"] = "delta + ("
    with pytest.raises(ValueError):
        TLMorphism.from_json(doc, SYM)

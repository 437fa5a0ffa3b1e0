"""Top projectors: recursion, run formula, linear-system oracle, traces."""

from __future__ import annotations

import random

import pytest

from colortl.diagrams import check_word, e_diagram, valid_cap_positions
from colortl.jones_wenzl import (
    JWResult,
    decompose_identity,
    jw_descriptive,
    jw_recursive,
    maximal_alternating_runs,
    partial_trace_check,
    perp_space_oracle,
    right_coefficient_check,
    run_binomial_obstructions,
    tail_length,
)
from colortl.rings import CartanMatrix, Integers, PrimeField, quantum_number
from colortl.tl_category import (
    InvariantViolation,
    TLMorphism,
    apply_cap,
    apply_cup,
    compose,
    hom_basis,
    involution,
)

SYM = CartanMatrix.symmetric_delta(("b", "g", "r", "y"))
QD = SYM.ring
DELTA = QD.delta
F2 = CartanMatrix.constant(("b", "r"), ring=PrimeField(2))


# ---------------------------------------------------------------------------
# Word combinatorics.


def test_tail_length_examples():
    assert tail_length(check_word("r")) == 1
    assert tail_length(check_word("rb")) == 2
    assert tail_length(check_word("rbr")) == 3
    assert tail_length(check_word("grbrb")) == 4
    assert tail_length(check_word("gbryrgbrbrb")) == 5


def test_maximal_alternating_runs_examples():
    assert maximal_alternating_runs(check_word("r")) == [(0, 0)]
    assert maximal_alternating_runs(check_word("rb")) == [(0, 1)]
    assert maximal_alternating_runs(check_word("rbrb")) == [(0, 3)]
    assert maximal_alternating_runs(check_word("rgb")) == [(0, 1), (1, 2)]
    assert maximal_alternating_runs(check_word("grgyr")) == [(0, 2), (2, 3), (3, 4)]


def test_runs_tile_the_word():
    rng = random.Random(11)
    colors = "rbgy"
    for _ in range(50):
        word = [rng.choice(colors)]
        while len(word) < rng.randint(1, 9):
            nxt = rng.choice(colors)
            if nxt != word[-1]:
                word.append(nxt)
        x = tuple(word)
        runs = maximal_alternating_runs(x)
        assert runs[0][0] == 0
        assert runs[-1][1] == len(x) - 1
        for (i1, j1), (i2, j2) in zip(runs, runs[1:]):
            assert j1 == i2
        for i, j in runs:
            for t in range(i, j - 1):
                assert x[t] == x[t + 2]


# ---------------------------------------------------------------------------
# Small projectors over Q(delta).


def test_short_words_are_identities():
    for w in ("r", "rb"):
        x = check_word(w)
        res = jw_recursive(x, SYM)
        assert res.exists and res.obstruction is None
        assert res.morphism == TLMorphism.identity(x, SYM)


def test_jw_rbr_coefficients():
    x = check_word("rbr")
    res = jw_recursive(x, SYM)
    assert res.exists
    f = res.morphism
    assert f.identity_coefficient() == QD.one
    e = e_diagram(x, 1)
    assert str(f.coefficient(e)) == "1/delta"
    assert len(f.terms) == 2


def test_jw_rbrb_coefficients():
    x = check_word("rbrb")
    f = jw_recursive(x, SYM).morphism
    e1 = e_diagram(x, 1)
    e2 = e_diagram(x, 2)
    assert f.identity_coefficient() == QD.one
    assert str(f.coefficient(e1)) == "delta/(delta^2-1)"
    assert str(f.coefficient(e2)) == "delta/(delta^2-1)"
    # two height-two diagrams with coefficient 1/[3]
    others = [
        c for d, c in f.terms.items()
        if d not in (e1, e2) and not d.is_identity()
    ]
    assert len(others) == 2
    assert all(str(c) == "1/(delta^2-1)" for c in others)


def test_jw_is_idempotent():
    for w in ("rbr", "rbrb", "rgb", "grgyr"):
        x = check_word(w)
        f = jw_recursive(x, SYM).morphism
        assert compose(f, f) == f


def test_jw_killed_by_caps_and_cups():
    for w in ("rbr", "rbrb", "rbrbr"):
        x = check_word(w)
        f = jw_recursive(x, SYM).morphism
        for p in valid_cap_positions(x):
            assert apply_cap(f, p).is_zero()
            assert apply_cup(f, p).is_zero()


def test_jw_flip_invariant():
    for w in ("rbr", "rbrb", "grg"):
        x = check_word(w)
        f = jw_recursive(x, SYM).morphism
        assert involution(f) == f


def test_jw_absorbs_endomorphisms():
    x = check_word("rbrb")
    f = jw_recursive(x, SYM).morphism
    for g in hom_basis(x, x, SYM):
        scalar = g.identity_coefficient()
        assert compose(f, g) == f.scale(scalar)
        assert compose(g, f) == f.scale(scalar)


# ---------------------------------------------------------------------------
# The three paths agree.


def test_three_paths_agree_on_samples():
    for w in ("r", "rb", "rbr", "rbrb", "rgb", "grgyr", "rbrbg"):
        x = check_word(w)
        rec = jw_recursive(x, SYM)
        desc = jw_descriptive(x, SYM)
        _, oracle = perp_space_oracle(x, SYM)
        assert rec.exists and desc.exists and oracle.exists
        assert rec.morphism == desc.morphism == oracle.morphism


def test_oracle_space_dimension():
    x = check_word("rbr")
    space, res = perp_space_oracle(x, SYM)
    assert len(space) == 1
    assert res.morphism == space[0].scale(space[0].identity_coefficient().inverse())


# ---------------------------------------------------------------------------
# Positive characteristic.


def test_rbr_fails_mod_two():
    res = jw_recursive(check_word("rbr"), F2)
    assert not res.exists
    assert res.morphism is None
    assert res.obstruction == {"k": 2, "m": 1, "pair": ["r", "b"], "value": "0"}


def test_rbrb_exists_mod_two():
    x = check_word("rbrb")
    res = jw_recursive(x, F2)
    assert res.exists
    f = res.morphism
    one = F2.ring.one
    assert f.identity_coefficient() == one
    e1 = e_diagram(x, 1)
    e2 = e_diagram(x, 2)
    assert f.coefficient(e1).is_zero()
    assert f.coefficient(e2).is_zero()
    nonzero = [d for d, c in f.terms.items() if not c.is_zero()]
    assert len(nonzero) == 3  # identity and the two height-two diagrams
    assert compose(f, f) == f
    for p in valid_cap_positions(x):
        assert apply_cap(f, p).is_zero()


def test_mod_two_agreement_of_all_paths():
    for w in ("rb", "rbrb", "rbr"):
        x = check_word(w)
        rec = jw_recursive(x, F2)
        desc = jw_descriptive(x, F2)
        _, oracle = perp_space_oracle(x, F2)
        assert rec.exists == desc.exists == oracle.exists
        if rec.exists:
            assert rec.morphism == desc.morphism == oracle.morphism


def test_integers_conservative_existence():
    cm = CartanMatrix.constant(("r", "b"), ring=Integers())
    res = jw_recursive(check_word("rbr"), cm)
    assert not res.exists  # 1/2 is not an integer
    res2 = jw_recursive(check_word("rb"), cm)
    assert res2.exists


def test_run_binomial_obstructions_mod_two():
    records = run_binomial_obstructions(check_word("rbr"), F2)
    assert records == [
        {"run": [1, 3], "k": 2, "m": 1, "pair": ["r", "b"], "value": "0"}
    ]
    assert run_binomial_obstructions(check_word("rbrb"), F2) == []


def test_obstruction_json_shape():
    res = jw_recursive(check_word("rbr"), F2)
    doc = res.to_json()
    assert doc["exists"] is False
    assert set(doc["obstruction"]) == {"k", "m", "pair", "value"}
    assert doc["terms"] == []
    good = jw_recursive(check_word("rbrb"), F2).to_json()
    assert good["exists"] is True
    assert good["obstruction"] is None
    assert good["source"] == ["r", "b", "r", "b"]
    assert len(good["terms"]) == 3


# ---------------------------------------------------------------------------
# Trace and coefficient identities.


def test_partial_trace_scalars():
    cases = {
        "rb": "-delta",
        "rbr": "(-delta^2+1)/delta",
        "rbrb": "(-delta^3+2*delta)/(delta^2-1)",
    }
    for w, expected in cases.items():
        scalar = partial_trace_check(check_word(w), SYM)
        assert str(scalar) == expected


def test_partial_trace_ratio_is_quantum():
    # the scalar is -[k]/[k-1] for the tail length k
    x = check_word("rbrb")
    scalar = partial_trace_check(x, SYM)
    k = tail_length(x)
    expected = -(quantum_number(k, QD) / quantum_number(k - 1, QD))
    assert scalar == expected


def test_right_coefficient_values():
    cases = {
        "rbr": "1/delta",
        "rbrb": "delta/(delta^2-1)",
        "grgrg": "(delta^2-1)/(delta^3-2*delta)",
    }
    for w, expected in cases.items():
        value = right_coefficient_check(check_word(w), SYM)
        assert str(value) == expected


def test_right_coefficient_requires_repeat():
    with pytest.raises(ValueError):
        right_coefficient_check(check_word("rgb"), SYM)


# ---------------------------------------------------------------------------
# Decomposition of the identity.


def test_decompose_multiplicities():
    cases = {
        "rb": {"r,b": 1},
        "rbr": {"r,b,r": 1, "r": 1},
        "rgb": {"r,g,b": 1},
        "rbrb": {"r,b,r,b": 1, "r,b": 2},
    }
    for w, expected in cases.items():
        dec = decompose_identity(check_word(w), SYM)
        assert dec.exists
        got = {label: mult for label, mult in dec.to_json()["multiplicities"].items()}
        assert got == expected


def test_decompose_orthogonal_idempotents():
    x = check_word("rbrb")
    dec = decompose_identity(x, SYM)
    total = TLMorphism.zero(x, x, SYM)
    for part in dec.parts:
        total = total + part.idempotent
    assert total == TLMorphism.identity(x, SYM)
    for i, p in enumerate(dec.parts):
        for j, q in enumerate(dec.parts):
            prod = compose(p.down, q.up)
            if i == j:
                assert prod == jw_recursive(p.label, SYM).morphism
            else:
                assert prod.is_zero()


def test_decompose_fails_where_projector_fails():
    dec = decompose_identity(check_word("rbr"), F2)
    assert not dec.exists
    assert dec.parts == ()
    assert dec.obstruction is not None


def test_decompose_json_shape():
    doc = decompose_identity(check_word("rbr"), SYM).to_json()
    assert doc["word"] == ["r", "b", "r"]
    assert doc["exists"] is True
    assert doc["multiplicities"] == {"r,b,r": 1, "r": 1}
    assert doc["obstruction"] is None

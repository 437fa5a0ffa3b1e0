"""Top idempotents of endomorphism algebras of color sequences.

For a color sequence x, End(x) has a diagram basis; the top idempotent JW(x)
is the unique element with identity coefficient 1 that is killed by composing
with any cup on the right (equivalently any cap on the left).  It need not
exist: each extension step of the recursion divides by a two-colored quantum
number, and over small rings those can fail to be invertible.

Three independent constructions live here:

* ``jw_recursive`` — extend letter by letter.  A fresh color juxtaposes a new
  strand; a color repeating the second-to-last letter adds a correction term
  ``c * (J (cup-cap) J)`` with ``c = [k-1]/[k]`` two-colored, where k is the
  tail length of the previous word.
* ``jw_descriptive`` — juxtapose the projectors of the maximal alternating
  runs; existence is governed run by run through quantum binomials.
* ``perp_space_oracle`` — solve the annihilation equations as an exact sparse
  linear system; this is the ground-truth existence oracle.

Over a quotient ring (prime fields, integers) the recursion can hit a dead
prefix even when the full projector exists, so ``jw_recursive`` runs the
recursion over the rational lift of the entries and then specializes the
final coefficients, reporting non-existence exactly when a coefficient fails
to land in the target ring.

``decompose_identity`` refines the identity of End(x) into orthogonal
idempotents labeled by shorter sequences; the multiplicity map is the
decategorified content of the top-idempotent theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .diagrams import (
    Word,
    cap_diagram,
    check_word,
    cup_diagram,
    e_diagram,
    enumerate_colored,
    identity_diagram,
    valid_cap_positions,
)
from .linalg import nullspace
from .rings import (
    CartanMatrix,
    Integers,
    PrimeField,
    RingElement,
    RingSpec,
    two_colored_binomial,
    two_colored_quantum,
)
from .tl_category import (
    InvariantViolation,
    TLMorphism,
    compose,
    juxtapose,
    partial_trace_last,
)

# ---------------------------------------------------------------------------
# Word combinatorics.


def tail_length(x) -> int:
    """Length of the maximal alternating final subsequence of x."""
    x = check_word(x)
    n = len(x)
    k = 1
    while k < n and (k < 2 or x[n - k - 1] == x[n - k + 1]):
        k += 1
    return k


def maximal_alternating_runs(x) -> list[tuple[int, int]]:
    """Consecutive maximal two-colored runs, as inclusive letter intervals.

    Runs overlap in one letter; a run (i, j) has j - i + 1 letters, and the
    letter gaps i+1..j over all runs partition the gaps of x.
    """
    x = check_word(x)
    n = len(x)
    if n == 1:
        return [(0, 0)]
    runs = []
    i = 0
    while i < n - 1:
        j = i + 1
        while j + 1 < n and x[j - 1] == x[j + 1]:
            j += 1
        runs.append((i, j))
        i = j
    return runs


def _check_word_in(x: Word, cartan: CartanMatrix):
    for letter in x:
        if letter not in cartan.alphabet:
            raise ValueError(f"color {letter!r} is not in the alphabet")


def _check_ring(cartan: CartanMatrix, ring: Optional[RingSpec]):
    if ring is not None and ring != cartan.ring:
        raise ValueError("requested ring does not match the color matrix ring")


# ---------------------------------------------------------------------------
# Results.


@dataclass(frozen=True)
class JWResult:
    word: Word
    exists: bool
    morphism: Optional[TLMorphism]
    obstruction: Optional[dict]

    def to_json(self) -> dict:
        doc = {
            "source": list(self.word),
            "target": list(self.word),
            "terms": [],
            "exists": self.exists,
            "obstruction": self.obstruction,
        }
        if self.morphism is not None:
            doc.update(self.morphism.to_json())
        return doc


def _witness(k: int, m: int, s: str, t: str, value) -> dict:
    return {"k": k, "m": m, "pair": [s, t], "value": str(value)}


def run_binomial_obstructions(x, cartan: CartanMatrix) -> list[dict]:
    """All non-invertible run binomials of x, as witness records.

    A run of length k+1 ending ...t,s contributes the binomials [k over m]
    for 0 <= m <= k; the outer ones are 1, so only 1 <= m <= k-1 can fail.
    When the binomial fast path cannot produce a value, the run's projector
    existence is settled by the linear-system oracle instead.
    """
    x = check_word(x)
    _check_word_in(x, cartan)
    out = []
    for (i, j) in maximal_alternating_runs(x):
        k = j - i
        if k < 2:
            continue
        s, t = x[j], x[j - 1]
        for m in range(1, k):
            value = two_colored_binomial(k, m, s, t, cartan)
            if value is None:
                if cartan.ring.is_field:
                    _, normalized = _oracle_solve(x[i : j + 1], cartan)
                    if normalized is None:
                        rec = _witness(k, m, s, t, "undefined")
                        rec["run"] = [i + 1, j + 1]
                        out.append(rec)
                        break
                continue
            if not value.is_invertible():
                rec = _witness(k, m, s, t, value)
                rec["run"] = [i + 1, j + 1]
                out.append(rec)
    return out


def _binomial_witness(x: Word, cartan: CartanMatrix) -> Optional[dict]:
    for rec in run_binomial_obstructions(x, cartan):
        return {key: rec[key] for key in ("k", "m", "pair", "value")}
    return None


# ---------------------------------------------------------------------------
# Recursive construction.

_JW_MEMO: dict[tuple[Word, CartanMatrix], JWResult] = {}


def jw_recursive(x, cartan: CartanMatrix, ring: Optional[RingSpec] = None) -> JWResult:
    """Build JW(x) by extending along initial subsequences of x."""
    x = check_word(x)
    _check_word_in(x, cartan)
    _check_ring(cartan, ring)
    if isinstance(cartan.ring, (PrimeField, Integers)):
        return _jw_specialized(x, cartan)
    return _jw_direct(x, cartan)


def _jw_direct(x: Word, cartan: CartanMatrix) -> JWResult:
    key = (x, cartan)
    cached = _JW_MEMO.get(key)
    if cached is not None:
        return cached
    if len(x) <= 2:
        result = JWResult(x, True, TLMorphism.identity(x, cartan), None)
        _JW_MEMO[key] = result
        return result
    z, g = x[:-1], x[-1]
    sub = _jw_direct(z, cartan)
    if not sub.exists:
        result = JWResult(x, False, None, sub.obstruction)
    elif z[-2] != g:
        fresh = juxtapose(sub.morphism, TLMorphism.identity((z[-1], g), cartan))
        result = JWResult(x, True, fresh, None)
    else:
        s, t = z[-2], z[-1]
        k = tail_length(z)
        den = two_colored_quantum(k, s, t, cartan)
        if not den.is_invertible():
            result = JWResult(x, False, None, _witness(k, 1, s, t, den))
        else:
            c = two_colored_quantum(k - 1, t, s, cartan) / den
            j1 = juxtapose(sub.morphism, TLMorphism.identity((t, s), cartan))
            e = TLMorphism.from_diagram(e_diagram(x, len(x) - 2), cartan)
            correction = compose(j1, compose(e, j1)).scale(c)
            result = JWResult(x, True, j1 + correction, None)
    _JW_MEMO[key] = result
    return result


def _jw_specialized(x: Word, cartan: CartanMatrix) -> JWResult:
    """Run the recursion over the rational lift, then land in the quotient.

    The final coefficients lie in the target ring exactly when the projector
    exists there; a dead rational prefix (possible only for degenerate
    rational entries) falls back to the oracle when the ring is a field.
    """
    lifted = cartan.rational_lift_matrix()
    res_q = _jw_direct(x, lifted)
    if res_q.exists:
        morphism = _specialize(res_q.morphism, cartan)
        if morphism is not None:
            return JWResult(x, True, morphism, None)
        obstruction = _binomial_witness(x, cartan) or {
            "reason": "rational coefficients do not specialize to the ring"
        }
        return JWResult(x, False, None, obstruction)
    if cartan.ring.is_field:
        _, res = perp_space_oracle(x, cartan)
        return res
    return JWResult(x, False, None, res_q.obstruction)


def _specialize(f: TLMorphism, cartan: CartanMatrix) -> Optional[TLMorphism]:
    ring = cartan.ring
    terms = {}
    for d, coeff in f.terms.items():
        q: Fraction = coeff.payload
        try:
            terms[d] = RingElement(ring, ring.from_fraction(q))
        except ValueError:
            return None
    return TLMorphism(f.source, f.target, cartan, terms)


# ---------------------------------------------------------------------------
# Descriptive (side-by-side) construction.


def jw_descriptive(x, cartan: CartanMatrix, ring: Optional[RingSpec] = None) -> JWResult:
    """Build JW(x) as the juxtaposition of its alternating-run projectors."""
    x = check_word(x)
    _check_word_in(x, cartan)
    _check_ring(cartan, ring)
    obstructions = run_binomial_obstructions(x, cartan)
    if obstructions:
        first = obstructions[0]
        return JWResult(
            x, False, None, {key: first[key] for key in ("k", "m", "pair", "value")}
        )
    morphism: Optional[TLMorphism] = None
    for (i, j) in maximal_alternating_runs(x):
        run_word = x[i : j + 1]
        piece = jw_recursive(run_word, cartan)
        if not piece.exists and cartan.ring.is_field:
            _, piece = perp_space_oracle(run_word, cartan)
        if not piece.exists:
            raise InvariantViolation(
                "run binomials invertible but run projector missing"
            )
        morphism = piece.morphism if morphism is None else juxtapose(morphism, piece.morphism)
    return JWResult(x, True, morphism, None)


# ---------------------------------------------------------------------------
# Linear-system oracle.


def _oracle_solve(
    x: Word, cartan: CartanMatrix
) -> tuple[tuple[TLMorphism, ...], Optional[TLMorphism]]:
    """Solve the cup-annihilation system; no witness hunting here."""
    basis = enumerate_colored(x, x)
    index = {d: i for i, d in enumerate(basis)}
    rows: dict[tuple, dict[int, RingElement]] = {}
    for p in valid_cap_positions(x):
        cup = TLMorphism.from_diagram(cup_diagram(x, p), cartan)
        for d in basis:
            product = compose(TLMorphism.from_diagram(d, cartan), cup)
            for image, coeff in product.terms.items():
                row = rows.setdefault((p, image), {})
                col = index[d]
                row[col] = row[col] + coeff if col in row else coeff
    solutions = nullspace(list(rows.values()), len(basis), cartan.ring)
    space = tuple(
        TLMorphism(x, x, cartan, {basis[i]: c for i, c in vec.items()})
        for vec in solutions
    )
    id_col = index[identity_diagram(x)]
    for vec in solutions:
        if id_col in vec:
            inv = vec[id_col].inverse()
            normalized = TLMorphism(
                x, x, cartan, {basis[i]: inv * c for i, c in vec.items()}
            )
            return space, normalized
    return space, None


def perp_space_oracle(
    x, cartan: CartanMatrix, ring: Optional[RingSpec] = None
) -> tuple[tuple[TLMorphism, ...], JWResult]:
    """Solve the cup-annihilation equations over the diagram basis of End(x).

    Returns a basis of the solution space and the resulting existence
    verdict: the projector exists iff some solution has nonzero identity
    coefficient, and is then normalized to identity coefficient 1.
    """
    x = check_word(x)
    _check_word_in(x, cartan)
    _check_ring(cartan, ring)
    if not cartan.ring.is_field:
        raise ValueError("the linear-system oracle needs a coefficient field")
    space, normalized = _oracle_solve(x, cartan)
    if normalized is None:
        obstruction = _binomial_witness(x, cartan) or {
            "reason": "no annihilated element has unit identity coefficient"
        }
        return space, JWResult(x, False, None, obstruction)
    return space, JWResult(x, True, normalized, None)


# ---------------------------------------------------------------------------
# Trace and coefficient identities.


def partial_trace_check(x, cartan: CartanMatrix, ring: Optional[RingSpec] = None) -> RingElement:
    """Close the last strand of JW(x) and verify it is -[k]/[k-1] times JW(z).

    Here x ends ...s,t, k = tail_length(x), z = x[:-1], and the quantum
    numbers are the two-colored ones [k]_{s,t} and [k-1]_{t,s}.  Returns the
    verified scalar.
    """
    x = check_word(x)
    _check_ring(cartan, ring)
    if len(x) < 2:
        raise ValueError("need at least two letters to close a strand")
    res_x = jw_recursive(x, cartan)
    res_z = jw_recursive(x[:-1], cartan)
    if not res_x.exists or not res_z.exists:
        raise ValueError("both projectors must exist for the trace identity")
    s, t = x[-2], x[-1]
    k = tail_length(x)
    den = two_colored_quantum(k - 1, t, s, cartan)
    if not den.is_invertible():
        raise InvariantViolation("[k-1] must be invertible when both projectors exist")
    scalar = -(two_colored_quantum(k, s, t, cartan) / den)
    traced = partial_trace_last(res_x.morphism)
    if traced != res_z.morphism.scale(scalar):
        raise InvariantViolation("partial trace of the projector has the wrong value")
    return scalar


def right_coefficient_check(
    x, cartan: CartanMatrix, ring: Optional[RingSpec] = None
) -> RingElement:
    """Extract the cup-cap coefficient at the last two points of JW(x).

    For x = z s with z ending ...s,t and k = tail_length(z), that coefficient
    must equal [k-1]_{t,s} / [k]_{s,t}.  Returns the verified value.
    """
    x = check_word(x)
    _check_ring(cartan, ring)
    if len(x) < 3 or x[-1] != x[-3]:
        raise ValueError("the last letter must repeat the second-to-last of its prefix")
    res = jw_recursive(x, cartan)
    if not res.exists:
        raise ValueError("the projector must exist to read off its coefficient")
    s, t = x[-1], x[-2]
    k = tail_length(x[:-1])
    den = two_colored_quantum(k, s, t, cartan)
    if not den.is_invertible():
        raise InvariantViolation("[k] must be invertible when the projector exists")
    expected = two_colored_quantum(k - 1, t, s, cartan) / den
    actual = res.morphism.coefficient(e_diagram(x, len(x) - 2))
    if actual != expected:
        raise InvariantViolation("cup-cap coefficient disagrees with [k-1]/[k]")
    return actual


# ---------------------------------------------------------------------------
# Identity decomposition.


@dataclass(frozen=True)
class Part:
    """One orthogonal summand of the identity of End(word).

    ``up``: label -> word and ``down``: word -> label satisfy
    down o up = JW(label); the idempotent is up o down.
    """

    label: Word
    up: TLMorphism
    down: TLMorphism

    @property
    def idempotent(self) -> TLMorphism:
        return compose(self.up, self.down)


@dataclass(frozen=True)
class Decomposition:
    word: Word
    exists: bool
    parts: tuple[Part, ...]
    multiplicities: dict[Word, int]
    obstruction: Optional[dict]

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "exists": self.exists,
            "multiplicities": {
                ",".join(label): count for label, count in sorted(self.multiplicities.items())
            },
            "obstruction": self.obstruction,
        }


def decompose_identity(
    x, cartan: CartanMatrix, ring: Optional[RingSpec] = None
) -> Decomposition:
    """Split the identity of End(x) into orthogonal labeled idempotents.

    Walks the letters of x, extending every current part: a fresh letter
    prolongs the part by a strand; a letter repeating the part label's
    second-to-last color splits it into the projector part for the longer
    label and a complementary part that factors through the label with its
    last letter removed.
    """
    x = check_word(x)
    _check_word_in(x, cartan)
    _check_ring(cartan, ring)
    one = TLMorphism.identity(x[:1], cartan)
    parts = [Part(x[:1], one, one)]
    for idx in range(1, len(x)):
        s = x[idx]
        new_parts = []
        for part in parts:
            y = part.label
            strand = TLMorphism.identity((y[-1], s), cartan)
            up1 = juxtapose(part.up, strand)
            down1 = juxtapose(part.down, strand)
            ys = y + (s,)
            if len(y) < 2 or y[-2] != s:
                new_parts.append(Part(ys, up1, down1))
                continue
            res = jw_recursive(ys, cartan)
            if not res.exists:
                return Decomposition(x, False, (), {}, res.obstruction)
            jw = res.morphism
            new_parts.append(Part(ys, compose(up1, jw), compose(jw, down1)))
            t = y[-1]
            k = tail_length(y)
            c = two_colored_quantum(k - 1, t, s, cartan) / two_colored_quantum(
                k, s, t, cartan
            )
            cup = TLMorphism.from_diagram(cup_diagram(ys, len(ys) - 2), cartan)
            cap = TLMorphism.from_diagram(cap_diagram(ys, len(ys) - 2), cartan)
            new_parts.append(
                Part(y[:-1], compose(up1, cup), compose(cap, down1).scale(-c))
            )
        parts = new_parts
    multiplicities: dict[Word, int] = {}
    for part in parts:
        multiplicities[part.label] = multiplicities.get(part.label, 0) + 1
    return Decomposition(x, True, tuple(parts), multiplicities, None)

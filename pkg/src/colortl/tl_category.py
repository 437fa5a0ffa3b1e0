"""Linear combinations of colored diagrams and the operations on them.

Hom(x, y) is the free module over the coefficient ring on the consistently
colorable crossingless matchings from x to y.  Vertical composition stacks
diagrams and evaluates each closed loop to the pairing value of its two
adjacent colors — entry (outside, inside) of the color matrix — multiplying
the coefficient.  Horizontal juxtaposition glues strips side by side along a
shared edge color.  The duality flips diagrams upside down and reverses
composition order; coefficients are fixed.

Morphisms are kept normalized: zero coefficients are dropped, so equality is
dict equality on terms.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .diagrams import (
    ColoredMatching,
    CrossinglessMatching,
    Word,
    cap_diagram,
    cap_target,
    check_word,
    color_matching,
    compose_matchings,
    cup_diagram,
    e_diagram,
    enumerate_colored,
    flip,
    identity_diagram,
)
from .rings import CartanMatrix, RingElement


class InvariantViolation(Exception):
    """An internal consistency check failed; indicates a genuine bug."""


class TLMorphism:
    """A ring-linear combination of colored diagrams x -> y."""

    __slots__ = ("source", "target", "cartan", "terms")

    def __init__(
        self,
        source: Iterable[str],
        target: Iterable[str],
        cartan: CartanMatrix,
        terms: Optional[Mapping[ColoredMatching, RingElement]] = None,
    ):
        self.source = check_word(source)
        self.target = check_word(target)
        self.cartan = cartan
        self.terms: dict[ColoredMatching, RingElement] = {}
        if terms:
            for d, c in terms.items():
                if d.source != self.source or d.target != self.target:
                    raise ValueError("diagram does not match morphism boundary")
                if not c.is_zero():
                    self.terms[d] = c

    @property
    def ring(self):
        return self.cartan.ring

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, source, target, cartan: CartanMatrix) -> "TLMorphism":
        return cls(source, target, cartan)

    @classmethod
    def from_diagram(cls, d: ColoredMatching, cartan: CartanMatrix, coeff=None) -> "TLMorphism":
        c = cartan.ring.one if coeff is None else coeff
        return cls(d.source, d.target, cartan, {d: c})

    @classmethod
    def identity(cls, x, cartan: CartanMatrix) -> "TLMorphism":
        return cls.from_diagram(identity_diagram(x), cartan)

    # -- module structure --------------------------------------------------

    def _check_compatible(self, other: "TLMorphism"):
        if (
            self.source != other.source
            or self.target != other.target
            or self.cartan is not other.cartan
            and self.cartan != other.cartan
        ):
            raise ValueError("morphisms live in different hom-spaces")

    def __add__(self, other: "TLMorphism") -> "TLMorphism":
        self._check_compatible(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return TLMorphism(self.source, self.target, self.cartan, out)

    def __sub__(self, other: "TLMorphism") -> "TLMorphism":
        return self + (-other)

    def __neg__(self) -> "TLMorphism":
        return TLMorphism(
            self.source, self.target, self.cartan, {d: -c for d, c in self.terms.items()}
        )

    def scale(self, c) -> "TLMorphism":
        if isinstance(c, int):
            c = self.ring.from_int(c)
        return TLMorphism(
            self.source, self.target, self.cartan, {d: c * v for d, v in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TLMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.cartan == other.cartan
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d: ColoredMatching) -> RingElement:
        return self.terms.get(d, self.ring.zero)

    def identity_coefficient(self) -> RingElement:
        if self.source != self.target:
            raise ValueError("identity coefficient needs an endomorphism")
        return self.coefficient(identity_diagram(self.source))

    def in_lower_ideal(self) -> bool:
        """True when every term factors through a shorter word."""
        return all(not d.is_identity() for d in self.terms)

    def __repr__(self) -> str:
        src, tgt = "".join(self.source), "".join(self.target)
        return f"<TLMorphism {src}->{tgt}, {len(self.terms)} terms>"

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for d in sorted(self.terms, key=lambda d: d.matching.pairs()):
            pairs = " ".join(f"{a}-{b}" for a, b in d.matching.pairs())
            bits.append(f"({self.terms[d]}) * [{pairs}]")
        return " + ".join(bits)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for d in sorted(self.terms, key=lambda d: d.matching.pairs()):
            terms.append({"matching": d.to_json(), "coeff": str(self.terms[d])})
        return {
            "source": list(self.source),
            "target": list(self.target),
            "terms": terms,
        }

    @classmethod
    def from_json(cls, doc: dict, cartan: CartanMatrix) -> "TLMorphism":
        source = check_word(doc["source"])
        target = check_word(doc["target"])
        terms: dict[ColoredMatching, RingElement] = {}
        for item in doc["terms"]:
            matching = CrossinglessMatching.from_json(item["matching"])
            colored = color_matching(matching, source, target)
            if colored is None:
                raise ValueError("matching admits no consistent coloring")
            coeff = cartan.ring.parse(item["coeff"])
            terms[colored] = terms[colored] + coeff if colored in terms else coeff
        return cls(source, target, cartan, terms)


# ---------------------------------------------------------------------------
# Category operations.


def compose(top: TLMorphism, bottom: TLMorphism) -> TLMorphism:
    """Vertical composition: ``top`` after ``bottom``."""
    if bottom.cartan != top.cartan:
        raise ValueError("morphisms use different color matrices")
    if bottom.target != top.source:
        raise ValueError("composition interfaces do not match")
    cartan = bottom.cartan
    out: dict[ColoredMatching, RingElement] = {}
    for d2, c2 in bottom.terms.items():
        for d1, c1 in top.terms.items():
            stacked, circles = compose_matchings(d1, d2)
            c = c1 * c2
            for inside, outside in circles:
                c = c * cartan.entry(outside, inside)
            if c.is_zero():
                continue
            if stacked in out:
                out[stacked] = out[stacked] + c
            else:
                out[stacked] = c
    return TLMorphism(bottom.source, top.target, cartan, out)


def juxtapose(left: TLMorphism, right: TLMorphism) -> TLMorphism:
    """Horizontal composition: glue strips along a shared edge color."""
    if left.cartan != right.cartan:
        raise ValueError("morphisms use different color matrices")
    if left.source[-1] != right.source[0] or left.target[-1] != right.target[0]:
        raise ValueError("juxtaposition edge colors do not match")
    source = left.source + right.source[1:]
    target = left.target + right.target[1:]
    out: dict[ColoredMatching, RingElement] = {}
    for d1, c1 in left.terms.items():
        for d2, c2 in right.terms.items():
            glued = _juxtapose_diagrams(d1, d2, source, target)
            c = c1 * c2
            if glued in out:
                out[glued] = out[glued] + c
            else:
                out[glued] = c
    return TLMorphism(source, target, left.cartan, out)


def _juxtapose_diagrams(
    d1: ColoredMatching, d2: ColoredMatching, source: Word, target: Word
) -> ColoredMatching:
    pairs = list(d1.matching.pairs())
    for a, b in d2.matching.pairs():
        pairs.append((_shift_label(a, d1.m, d1.k), _shift_label(b, d1.m, d1.k)))
    glued = CrossinglessMatching.from_pairs(d1.m + d2.m, d1.k + d2.k, pairs)
    colored = color_matching(glued, source, target)
    if colored is None:
        raise InvariantViolation("juxtaposition broke coloring consistency")
    return colored


def _shift_label(label: str, dm: int, dk: int) -> str:
    if label[0] == "B":
        return f"B{int(label[1:]) + dm}"
    return f"T{int(label[1:]) + dk}"


def involution(f: TLMorphism) -> TLMorphism:
    """Flip every diagram upside down; contravariant for composition."""
    return TLMorphism(
        f.target, f.source, f.cartan, {flip(d): c for d, c in f.terms.items()}
    )


def apply_cap(f: TLMorphism, p: int) -> TLMorphism:
    """Postcompose with the elementary cap at points p, p+1 of the target."""
    cap = TLMorphism.from_diagram(cap_diagram(f.target, p), f.cartan)
    return compose(cap, f)


def apply_cup(f: TLMorphism, p: int) -> TLMorphism:
    """Precompose with the elementary cup creating points p, p+1 of the source."""
    cup = TLMorphism.from_diagram(cup_diagram(f.source, p), f.cartan)
    return compose(f, cup)


def elementary_e(x, p: int, cartan: CartanMatrix) -> TLMorphism:
    """The cup-over-cap endomorphism at points p, p+1 of x."""
    return TLMorphism.from_diagram(e_diagram(x, p), cartan)


def partial_trace_last(f: TLMorphism) -> TLMorphism:
    """Close the rightmost strand around the right edge of the strip.

    For f: x -> y this gives a morphism x[:-1] -> y[:-1]; a diagram whose
    rightmost points are paired with each other closes into a loop and
    contributes its pairing value instead.
    """
    x, y = f.source, f.target
    if len(x) < 2 or len(y) < 2:
        raise ValueError("no strand to close")
    nx, ny = x[:-1], y[:-1]
    if x[-1] != y[-1]:
        # The hom-space is zero, so the trace is too.
        return TLMorphism.zero(nx, ny, f.cartan)
    cartan = f.cartan
    out: dict[ColoredMatching, RingElement] = {}
    for d, c in f.terms.items():
        traced, scalar = _trace_diagram(d, cartan)
        c = c * scalar if scalar is not None else c
        if traced is None:
            continue
        colored = color_matching(traced, nx, ny)
        if colored is None:
            raise InvariantViolation("partial trace broke coloring consistency")
        if colored in out:
            out[colored] = out[colored] + c
        else:
            out[colored] = c
        if out[colored].is_zero():
            del out[colored]
    return TLMorphism(nx, ny, cartan, out)


def _trace_diagram(
    d: ColoredMatching, cartan: CartanMatrix
) -> tuple[Optional[CrossinglessMatching], Optional[RingElement]]:
    m, k = d.m, d.k
    partner = dict(d.matching.pairs())
    partner.update({b: a for a, b in d.matching.pairs()})
    last_b, last_t = f"B{m}", f"T{k}"
    if partner[last_b] == last_t:
        # The closed strand encircles the rightmost region.
        inside, outside = d.source[m], d.source[m - 1]
        new_pairs = [p for p in d.matching.pairs() if last_b not in p]
        if m - 1 == 0 and k - 1 == 0:
            return CrossinglessMatching(0, 0, ()), cartan.entry(outside, inside)
        return (
            CrossinglessMatching.from_pairs(m - 1, k - 1, new_pairs),
            cartan.entry(outside, inside),
        )
    p, q = partner[last_b], partner[last_t]
    new_pairs = [
        pair for pair in d.matching.pairs() if last_b not in pair and last_t not in pair
    ]
    new_pairs.append((p, q))
    return CrossinglessMatching.from_pairs(m - 1, k - 1, new_pairs), None


def hom_basis(x, y, cartan: CartanMatrix) -> tuple[TLMorphism, ...]:
    """The diagram basis of Hom(x, y) as one-term morphisms."""
    x, y = check_word(x), check_word(y)
    return tuple(
        TLMorphism.from_diagram(d, cartan) for d in enumerate_colored(x, y)
    )

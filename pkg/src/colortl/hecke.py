"""The Hecke algebra of a universal Coxeter group.

Group elements are their unique reduced words (tuples of colors; the empty
tuple is the identity).  Elements of the algebra are finitely supported maps
from reduced words to Laurent polynomials in v, stored as plain dicts with no
zero entries; Laurent polynomials are exponent -> coefficient dicts.

The standard basis multiplies through the quadratic relation
H_s^2 = (v^-1 - v) H_s + 1, extended by H_w H_s = H_{ws} when ws is longer.
The Kazhdan-Lusztig element b_w is produced by running the two-case
recursion left to right: a fresh letter multiplies by b_s = H_s + v, and a
letter repeating the second-to-last color additionally subtracts the element
for the word with that letter removed.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

CoxWord = tuple[str, ...]
LaurentPoly = dict[int, int]
HeckeElement = dict[CoxWord, LaurentPoly]

LP_ZERO: LaurentPoly = {}
LP_ONE: LaurentPoly = {0: 1}
LP_V: LaurentPoly = {1: 1}
LP_VINV: LaurentPoly = {-1: 1}
LP_V_PLUS_VINV: LaurentPoly = {1: 1, -1: 1}
LP_VINV_MINUS_V: LaurentPoly = {-1: 1, 1: -1}


# ---------------------------------------------------------------------------
# Laurent polynomials.


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out = dict(a)
    for e, c in b.items():
        n = out.get(e, 0) + c
        if n:
            out[e] = n
        else:
            out.pop(e, None)
    return out


def lp_neg(a: LaurentPoly) -> LaurentPoly:
    return {e: -c for e, c in a.items()}


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out: LaurentPoly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            n = out.get(e, 0) + c1 * c2
            if n:
                out[e] = n
            else:
                del out[e]
    return out


def lp_str(a: LaurentPoly) -> str:
    if not a:
        return "0"
    bits = []
    for e in sorted(a, reverse=True):
        c = a[e]
        if e == 0:
            body = str(abs(c))
        else:
            pow_ = "v" if e == 1 else f"v^{e}"
            body = pow_ if abs(c) == 1 else f"{abs(c)}{pow_}"
        if not bits:
            bits.append(body if c > 0 else f"-{body}")
        else:
            bits.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(bits)


def lp_to_json(a: LaurentPoly) -> dict:
    return {str(e): c for e, c in sorted(a.items())}


def lp_from_json(doc: dict) -> LaurentPoly:
    out: LaurentPoly = {}
    for e, c in doc.items():
        c = int(c)
        if c:
            out[int(e)] = out.get(int(e), 0) + c
    return out


def lp_eval_at_one(a: LaurentPoly) -> int:
    return sum(a.values())


# ---------------------------------------------------------------------------
# Words.


def reduce_word(letters: Iterable[str]) -> CoxWord:
    """Cancel adjacent equal pairs until the word is reduced."""
    stack: list[str] = []
    for letter in letters:
        if stack and stack[-1] == letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def is_reduced(word: Iterable[str]) -> bool:
    word = tuple(word)
    return all(a != b for a, b in zip(word, word[1:]))


# ---------------------------------------------------------------------------
# Standard basis arithmetic.


def he_unit(word: Iterable[str] = ()) -> HeckeElement:
    word = tuple(word)
    if not is_reduced(word):
        raise ValueError("standard basis elements are indexed by reduced words")
    return {word: dict(LP_ONE)}


def he_add(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    out = {w: dict(p) for w, p in a.items()}
    for w, p in b.items():
        s = lp_add(out.get(w, LP_ZERO), p)
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def he_scale(a: HeckeElement, poly: LaurentPoly) -> HeckeElement:
    out: HeckeElement = {}
    for w, p in a.items():
        s = lp_mul(p, poly)
        if s:
            out[w] = s
    return out


def he_neg(a: HeckeElement) -> HeckeElement:
    return {w: lp_neg(p) for w, p in a.items()}


def mult_Hs(h: HeckeElement, s: str) -> HeckeElement:
    """Right multiplication by the generator H_s via the quadratic relation."""
    out: HeckeElement = {}
    def put(w: CoxWord, p: LaurentPoly):
        n = lp_add(out.get(w, LP_ZERO), p)
        if n:
            out[w] = n
        else:
            out.pop(w, None)
    for w, p in h.items():
        if w and w[-1] == s:
            put(w, lp_mul(p, LP_VINV_MINUS_V))
            put(w[:-1], p)
        else:
            put(w + (s,), p)
    return out


def he_mult(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product in the standard basis, folding b term by term."""
    out: HeckeElement = {}
    for w, p in b.items():
        cur = a
        for letter in w:
            cur = mult_Hs(cur, letter)
        out = he_add(out, he_scale(cur, p))
    return out


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig basis.


def _mult_by_bs(h: HeckeElement, s: str) -> HeckeElement:
    # b_s = H_s + v
    return he_add(mult_Hs(h, s), he_scale(h, LP_V))


@lru_cache(maxsize=None)
def _kl_basis_cached(w: CoxWord) -> tuple[tuple[CoxWord, tuple[tuple[int, int], ...]], ...]:
    if len(w) == 0:
        result = he_unit()
    elif len(w) == 1:
        result = _mult_by_bs(he_unit(), w[0])
    else:
        x, s = w[:-1], w[-1]
        result = _mult_by_bs(kl_basis(x), s)
        if len(x) >= 2 and x[-2] == s:
            result = he_add(result, he_neg(kl_basis(x[:-1])))
    return tuple(sorted((word, tuple(sorted(p.items()))) for word, p in result.items()))


def kl_basis(w: Iterable[str]) -> HeckeElement:
    """b_w in the standard basis, by the two-case recursion on the last letter."""
    w = tuple(w)
    if not is_reduced(w):
        raise ValueError("the KL basis is indexed by reduced words")
    return {word: dict(items) for word, items in _kl_basis_cached(w)}


def mult_kl_by_bs(x: Iterable[str], s: str) -> dict[CoxWord, LaurentPoly]:
    """The KL-basis expansion of b_x * b_s; three cases of the product rule."""
    x = tuple(x)
    if not is_reduced(x):
        raise ValueError("need a reduced word")
    if x and x[-1] == s:
        return {x: dict(LP_V_PLUS_VINV)}
    if len(x) >= 2 and x[-2] == s:
        return {x + (s,): dict(LP_ONE), x[:-1]: dict(LP_ONE)}
    return {x + (s,): dict(LP_ONE)}


# ---------------------------------------------------------------------------
# Serialization.


def he_to_json(h: HeckeElement) -> dict:
    terms = []
    for w in sorted(h, key=lambda w: (len(w), w)):
        terms.append({"word": list(w), "poly": lp_to_json(h[w])})
    return {"terms": terms}


def he_from_json(doc: dict) -> HeckeElement:
    out: HeckeElement = {}
    for item in doc["terms"]:
        word = tuple(item["word"])
        if not is_reduced(word):
            raise ValueError("standard basis words must be reduced")
        poly = lp_from_json(item["poly"])
        merged = lp_add(out.get(word, LP_ZERO), poly)
        if merged:
            out[word] = merged
        else:
            out.pop(word, None)
    return out


def he_str(h: HeckeElement) -> str:
    if not h:
        return "0"
    bits = []
    for w in sorted(h, key=lambda w: (-len(w), w)):
        name = "H(" + "".join(w) + ")" if w else "1"
        poly = h[w]
        if poly == LP_ONE:
            bits.append(name)
        elif len(poly) == 1 and name != "1":
            bits.append(f"{lp_str(poly)}*{name}")
        else:
            bits.append(f"({lp_str(poly)})*{name}" if name != "1" else lp_str(poly))
    return " + ".join(bits)

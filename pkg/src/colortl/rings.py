"""Exact coefficient rings and the (two-colored) quantum-number calculus.

Four coefficient rings are supported, all with exact arithmetic and canonical
normal forms (equal elements have identical representations, so `==` on
elements is decidable and cheap):

* ``Rational`` — arbitrary-precision rationals (stdlib ``fractions.Fraction``).
* ``PrimeField(p)`` — integers mod a prime p, residues normalized to ``0..p-1``.
* ``RationalFunctionDelta`` — the fraction field of integer polynomials in one
  indeterminate ``delta``.  A fraction is stored as a coprime pair of integer
  polynomials with the denominator's leading coefficient positive.
* ``Integers`` — plain integers; only ``+1``/``-1`` are invertible.  Useful for
  display and for stating crystallographic data before reducing mod p.

Polynomials are tuples of ``int`` coefficients indexed by degree with no
trailing zeros; ``()`` is the zero polynomial.

A ``CartanMatrix`` assigns a ring element ``a[s][t]`` to every ordered pair of
distinct colors (the diagonal is fixed to 2).  It also remembers a rational
*lift* of each entry whenever the entry was given numerically; the lift is what
allows characteristic-zero computations to be specialized to prime fields.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union


# ---------------------------------------------------------------------------
# Integer polynomials in one variable, as tuples of coefficients.

ZERO_POLY: tuple[int, ...] = ()
ONE_POLY: tuple[int, ...] = (1,)
DELTA_POLY: tuple[int, ...] = (0, 1)


def _ptrim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _ptrim(c)


def _pneg(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in a)


def _psub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return _padd(a, _pneg(b))


def _pmul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ZERO_POLY
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _ptrim(c)


def _pscale(n: int, a: tuple[int, ...]) -> tuple[int, ...]:
    if n == 0:
        return ZERO_POLY
    return tuple(n * x for x in a)


def _pcontent(a: tuple[int, ...]) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def _pprim(a: tuple[int, ...]) -> tuple[int, ...]:
    g = _pcontent(a)
    if g in (0, 1):
        return a
    return tuple(x // g for x in a)


def _pdiv_exact(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Divide a by b in Z[delta], assuming the division is exact."""
    if not a:
        return ZERO_POLY
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coeff = rem[i + len(b) - 1]
        if coeff % lead != 0:
            raise ArithmeticError("inexact polynomial division")
        q[i] = coeff // lead
        if q[i]:
            for j, y in enumerate(b):
                rem[i + j] -= q[i] * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _ptrim(q)


def _pgcd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Positive gcd in Z[delta] (content times primitive part)."""
    if not a:
        return b if (not b or b[-1] > 0) else _pneg(b)
    if not b:
        return a if a[-1] > 0 else _pneg(a)
    cont = math.gcd(_pcontent(a), _pcontent(b))
    a, b = _pprim(a), _pprim(b)
    # subresultant-free primitive PRS: pseudo-remainders, re-primitivized
    while b:
        d = len(a) - len(b)
        if d < 0:
            a, b = b, a
            continue
        # pseudo-remainder of lc(b)^(d+1) * a by b
        rem = _pscale(b[-1] ** (d + 1), a)
        rem_l = list(rem)
        lead = b[-1]
        for i in range(len(rem_l) - len(b), -1, -1):
            q = rem_l[i + len(b) - 1] // lead
            if rem_l[i + len(b) - 1] % lead != 0:
                raise AssertionError("pseudo-division must be exact")
            if q:
                for j, y in enumerate(b):
                    rem_l[i + j] -= q * y
        a, b = b, _pprim(_ptrim(rem_l))
    if a[-1] < 0:
        a = _pneg(a)
    return _pscale(cont, a) if cont != 1 else a


def _pformat(a: tuple[int, ...], var: str = "delta") -> str:
    if not a:
        return "0"
    parts: list[str] = []
    for deg in range(len(a) - 1, -1, -1):
        c = a[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        elif deg == 1:
            body = var if mag == 1 else f"{mag}*{var}"
        else:
            body = f"{var}^{deg}" if mag == 1 else f"{mag}*{var}^{deg}"
        parts.append(sign + body)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


@dataclass(frozen=True, slots=True)
class DeltaFrac:
    """A normalized fraction of integer polynomials in delta."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    @staticmethod
    def make(num: tuple[int, ...], den: tuple[int, ...]) -> "DeltaFrac":
        if not den:
            raise ZeroDivisionError("zero denominator in delta fraction")
        if not num:
            return DF_ZERO
        g = _pgcd(num, den)
        if g != ONE_POLY:
            num = _pdiv_exact(num, g)
            den = _pdiv_exact(den, g)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return DeltaFrac(num, den)

    def __str__(self) -> str:
        if self.den == ONE_POLY:
            return _pformat(self.num)
        ns = _pformat(self.num)
        ds = _pformat(self.den)
        if sum(1 for c in self.num if c) > 1:
            ns = f"({ns})"
        if sum(1 for c in self.den if c) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"


DF_ZERO = DeltaFrac(ZERO_POLY, ONE_POLY)
DF_ONE = DeltaFrac(ONE_POLY, ONE_POLY)
DF_DELTA = DeltaFrac(DELTA_POLY, ONE_POLY)


def _df_add(a: DeltaFrac, b: DeltaFrac) -> DeltaFrac:
    if a.num == ZERO_POLY:
        return b
    if b.num == ZERO_POLY:
        return a
    return DeltaFrac.make(
        _padd(_pmul(a.num, b.den), _pmul(b.num, a.den)), _pmul(a.den, b.den)
    )


def _df_mul(a: DeltaFrac, b: DeltaFrac) -> DeltaFrac:
    if a.num == ZERO_POLY or b.num == ZERO_POLY:
        return DF_ZERO
    return DeltaFrac.make(_pmul(a.num, b.num), _pmul(a.den, b.den))


def _df_neg(a: DeltaFrac) -> DeltaFrac:
    return DeltaFrac(_pneg(a.num), a.den) if a.num else a


def _df_inv(a: DeltaFrac) -> DeltaFrac:
    if a.num == ZERO_POLY:
        raise ZeroDivisionError("inverting zero rational function")
    num, den = a.den, a.num
    if den[-1] < 0:
        num, den = _pneg(num), _pneg(den)
    return DeltaFrac(num, den)


# ---------------------------------------------------------------------------
# Expression parser: integers, rationals, delta polynomials, +-*/^, parens.
# Everything is evaluated in Q(delta) and then coerced to the requested ring.

_TOKEN = re.compile(r"\s*(\d+|delta|[()+\-*/^])")


def _tokenize(text: str) -> list[str]:
    out: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse ring element near {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of ring-element expression")
        self.i += 1
        return tok

    def parse(self) -> DeltaFrac:
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input in ring element: {self.toks[self.i:]}")
        return value

    def expr(self) -> DeltaFrac:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = _df_add(value, rhs if op == "+" else _df_neg(rhs))
        return value

    def term(self) -> DeltaFrac:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = _df_mul(value, rhs if op == "*" else _df_inv(rhs))
        return value

    def factor(self) -> DeltaFrac:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.atom()
        if self.peek() == "^":
            self.take()
            esign = 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    esign = -esign
            tok = self.take()
            if not tok.isdigit():
                raise ValueError("exponent must be an integer")
            exp = esign * int(tok)
            base = value
            value = DF_ONE
            for _ in range(abs(exp)):
                value = _df_mul(value, base)
            if exp < 0:
                value = _df_inv(value)
        return value if sign == 1 else _df_neg(value)

    def atom(self) -> DeltaFrac:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses in ring element")
            return value
        if tok == "delta":
            return DF_DELTA
        if tok.isdigit():
            return DeltaFrac((int(tok),) if int(tok) else ZERO_POLY, ONE_POLY)
        raise ValueError(f"unexpected token {tok!r} in ring element")


def _parse_deltafrac(text: str) -> DeltaFrac:
    return _Parser(_tokenize(text)).parse()


def _df_as_fraction(value: DeltaFrac) -> Fraction:
    if len(value.num) > 1 or len(value.den) > 1:
        raise ValueError("expression involves delta, not allowed in this ring")
    n = value.num[0] if value.num else 0
    return Fraction(n, value.den[0])


# ---------------------------------------------------------------------------
# Ring specs and elements.


class RingSpec:
    """Base class for coefficient rings; subclasses are value-like and hashable."""

    key: tuple
    is_field = False
    name = "ring"

    # payload-level arithmetic -------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def invertible(self, a) -> bool:
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    # element-level conveniences -----------------------------------------------
    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self.from_fraction(Fraction(0)))

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self.from_fraction(Fraction(1)))

    def from_int(self, n: int) -> "RingElement":
        return RingElement(self, self.from_fraction(Fraction(n)))

    def parse(self, text: str) -> "RingElement":
        value = _parse_deltafrac(text)
        if isinstance(self, RationalFunctionDelta):
            return RingElement(self, value)
        return RingElement(self, self.from_fraction(_df_as_fraction(value)))

    def element(self, payload) -> "RingElement":
        return RingElement(self, payload)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.name


class Rational(RingSpec):
    key = ("q",)
    is_field = True
    name = "Q"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def invertible(self, a):
        return a != 0

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting zero")
        return 1 / a

    def from_fraction(self, q):
        return q

    def format(self, a):
        return str(a)


class Integers(RingSpec):
    key = ("z",)
    name = "Z"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def invertible(self, a):
        return a in (1, -1)

    def invert(self, a):
        if a not in (1, -1):
            raise ZeroDivisionError(f"{a} is not invertible in Z")
        return a

    def from_fraction(self, q):
        if q.denominator != 1:
            raise ValueError(f"{q} is not an integer")
        return q.numerator


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField(RingSpec):
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.key = ("fp", p)
        self.name = f"F{p}"

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def invertible(self, a):
        return a % self.p != 0

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverting 0 mod {self.p}")
        return pow(a, self.p - 2, self.p)

    def from_fraction(self, q):
        if q.denominator % self.p == 0:
            raise ValueError(f"{q} has no image mod {self.p}")
        return q.numerator * pow(q.denominator, self.p - 2, self.p) % self.p


class RationalFunctionDelta(RingSpec):
    key = ("qdelta",)
    is_field = True
    name = "Q(delta)"

    def add(self, a, b):
        return _df_add(a, b)

    def neg(self, a):
        return _df_neg(a)

    def mul(self, a, b):
        return _df_mul(a, b)

    def invertible(self, a):
        return a.num != ZERO_POLY

    def invert(self, a):
        return _df_inv(a)

    def from_fraction(self, q):
        num = (q.numerator,) if q.numerator else ZERO_POLY
        return DeltaFrac(num, (q.denominator,))

    def format(self, a):
        return str(a)

    @property
    def delta(self) -> "RingElement":
        return RingElement(self, DF_DELTA)


@dataclass(frozen=True, slots=True)
class RingElement:
    """A spec-tagged exact value with operator sugar."""

    spec: RingSpec
    payload: object

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.spec != self.spec:
                raise ValueError(f"mixing rings {self.spec} and {other.spec}")
            return other
        if isinstance(other, int):
            return self.spec.from_int(other)
        raise TypeError(f"cannot combine ring element with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return RingElement(self.spec, self.spec.add(self.payload, other.payload))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.spec, self.spec.neg(self.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RingElement(self.spec, self.spec.mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self == self.spec.zero

    def is_invertible(self) -> bool:
        return self.spec.invertible(self.payload)

    def inverse(self) -> "RingElement":
        return RingElement(self.spec, self.spec.invert(self.payload))

    def __str__(self) -> str:
        return self.spec.format(self.payload)

    def __repr__(self) -> str:
        return f"<{self.spec}: {self}>"


def is_invertible(x: RingElement) -> bool:
    """Field variants: x != 0; Integers: x = +-1."""
    return x.is_invertible()


_RING_BY_TYPE = {
    "q": Rational,
    "z": Integers,
    "qdelta": RationalFunctionDelta,
}


def ring_from_json(doc: dict) -> RingSpec:
    kind = doc.get("type")
    if kind == "fp":
        return PrimeField(int(doc["p"]))
    if kind in _RING_BY_TYPE:
        return _RING_BY_TYPE[kind]()
    raise ValueError(f"unknown ring type {kind!r}")


def ring_to_json(spec: RingSpec) -> dict:
    if isinstance(spec, PrimeField):
        return {"type": "fp", "p": spec.p}
    return {"type": spec.key[0]}


# ---------------------------------------------------------------------------
# Cartan matrices.


class CartanMatrix:
    """Off-diagonal entries a[s][t] over a fixed ring; diagonal pinned to 2.

    ``lift(s, t)`` recovers the rational number an entry was constructed from
    when there is one (always, except for entries genuinely involving delta).
    """

    def __init__(
        self,
        alphabet: tuple[str, ...] | list[str],
        ring: RingSpec,
        entries: dict[tuple[str, str], RingElement],
        lifts: Optional[dict[tuple[str, str], Optional[Fraction]]] = None,
    ):
        self.alphabet = tuple(alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet has repeated colors")
        self.ring = ring
        self._entries = dict(entries)
        self._lifts = dict(lifts or {})
        for s in self.alphabet:
            for t in self.alphabet:
                if s == t:
                    continue
                if (s, t) not in self._entries:
                    raise ValueError(f"missing Cartan entry for ({s},{t})")
                e = self._entries[s, t]
                if e.spec != ring:
                    raise ValueError("Cartan entry in the wrong ring")
        self.fingerprint = (
            self.alphabet,
            ring.key,
            tuple(
                (s, t, str(self._entries[s, t]))
                for s in self.alphabet
                for t in self.alphabet
                if s != t
            ),
        )
        self._hash = hash(self.fingerprint)
        self._rational_lift_cache: Optional[CartanMatrix] = None

    # -- construction ---------------------------------------------------------
    @classmethod
    def constant(
        cls,
        alphabet,
        value: Union[int, Fraction] = -2,
        ring: Optional[RingSpec] = None,
    ) -> "CartanMatrix":
        ring = ring or Integers()
        q = Fraction(value)
        entries = {}
        lifts = {}
        for s in alphabet:
            for t in alphabet:
                if s != t:
                    entries[s, t] = RingElement(ring, ring.from_fraction(q))
                    lifts[s, t] = q
        return cls(alphabet, ring, entries, lifts)

    @classmethod
    def symmetric_delta(cls, alphabet) -> "CartanMatrix":
        ring = RationalFunctionDelta()
        minus_delta = -ring.delta
        entries = {}
        lifts = {}
        for s in alphabet:
            for t in alphabet:
                if s != t:
                    entries[s, t] = minus_delta
                    lifts[s, t] = None
        return cls(alphabet, ring, entries, lifts)

    @classmethod
    def from_json(cls, doc: dict) -> "CartanMatrix":
        missing = {"alphabet", "cartan", "ring"} - set(doc)
        if missing:
            raise ValueError(f"realization document lacks {sorted(missing)}")
        alphabet = tuple(doc["alphabet"])
        ring = ring_from_json(doc["ring"])
        entries = {}
        lifts = {}
        for key, text in doc["cartan"].items():
            s, _, t = key.partition(",")
            s, t = s.strip(), t.strip()
            if s not in alphabet or t not in alphabet or s == t:
                raise ValueError(f"bad cartan key {key!r}")
            value = _parse_deltafrac(str(text))
            try:
                lifts[s, t] = _df_as_fraction(value)
            except ValueError:
                lifts[s, t] = None
            if isinstance(ring, RationalFunctionDelta):
                entries[s, t] = RingElement(ring, value)
            else:
                entries[s, t] = RingElement(ring, ring.from_fraction(_df_as_fraction(value)))
        return cls(alphabet, ring, entries, lifts)

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "cartan": {
                f"{s},{t}": str(self._entries[s, t])
                for s in self.alphabet
                for t in self.alphabet
                if s != t
            },
            "ring": ring_to_json(self.ring),
        }

    # -- access ----------------------------------------------------------------
    def entry(self, s: str, t: str) -> RingElement:
        if s == t:
            return self.ring.from_int(2)
        return self._entries[s, t]

    def lift(self, s: str, t: str) -> Optional[Fraction]:
        if s == t:
            return Fraction(2)
        return self._lifts.get((s, t))

    def rational_lift_matrix(self) -> "CartanMatrix":
        """The same matrix over Q, using the rational lifts of all entries."""
        if self._rational_lift_cache is None:
            ring = Rational()
            entries = {}
            lifts = {}
            for s in self.alphabet:
                for t in self.alphabet:
                    if s == t:
                        continue
                    q = self.lift(s, t)
                    if q is None:
                        raise ValueError(
                            f"Cartan entry ({s},{t}) has no rational lift"
                        )
                    entries[s, t] = RingElement(ring, q)
                    lifts[s, t] = q
            self._rational_lift_cache = CartanMatrix(self.alphabet, ring, entries, lifts)
        return self._rational_lift_cache

    def __eq__(self, other):
        return isinstance(other, CartanMatrix) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CartanMatrix({','.join(self.alphabet)} over {self.ring})"


# ---------------------------------------------------------------------------
# Quantum numbers.


def quantum_number(m: int, ring: RingSpec, two: Optional[RingElement] = None) -> RingElement:
    """The one-variable quantum number [m], with [0]=0, [1]=1, [2]=two.

    ``two`` defaults to delta when the ring is Q(delta); other rings must
    supply the image of delta explicitly.  Negative m uses [-m] = -[m].
    """
    if two is None:
        if isinstance(ring, RationalFunctionDelta):
            two = ring.delta
        else:
            raise ValueError("quantum_number needs an explicit [2] in this ring")
    if m < 0:
        return -quantum_number(-m, ring, two)
    if m == 0:
        return ring.zero
    prev, cur = ring.zero, ring.one
    for _ in range(m - 1):
        prev, cur = cur, two * cur - prev
    return cur


@lru_cache(maxsize=None)
def _two_colored_pairate(m: int, s: str, t: str, cartan: CartanMatrix) -> RingElement:
    ring = cartan.ring
    if m == 0:
        return ring.zero
    if m == 1:
        return ring.one
    two_st = -cartan.entry(s, t)
    two_ts = -cartan.entry(t, s)
    # run both orientations side by side: [j]_{s,t} = [2]_{s,t} [j-1]_{t,s} - [j-2]_{s,t}
    st_prev, ts_prev = ring.zero, ring.zero
    st_cur, ts_cur = ring.one, ring.one
    for _ in range(m - 1):
        st_next = two_st * ts_cur - st_prev
        ts_next = two_ts * st_cur - ts_prev
        st_prev, ts_prev = st_cur, ts_cur
        st_cur, ts_cur = st_next, ts_next
    return st_cur


def two_colored_quantum(m: int, s: str, t: str, cartan: CartanMatrix) -> RingElement:
    """The two-colored quantum number [m]_{s,t}; [2]_{s,t} = -a_{s,t}."""
    if s == t:
        raise ValueError("two-colored quantum numbers need distinct colors")
    if m < 0:
        return -_two_colored_pairate(-m, s, t, cartan)
    return _two_colored_pairate(m, s, t, cartan)


def _alternating_factorial(n: int, s: str, t: str, cartan: CartanMatrix) -> list[RingElement]:
    """Factors [n]_{s,t}, [n-1]_{t,s}, [n-2]_{s,t}, ... down to [1]."""
    out = []
    pair = (s, t)
    for j in range(n, 0, -1):
        out.append(two_colored_quantum(j, pair[0], pair[1], cartan))
        pair = (pair[1], pair[0])
    return out


@lru_cache(maxsize=None)
def two_colored_binomial(
    k: int, m: int, s: str, t: str, cartan: CartanMatrix
) -> Optional[RingElement]:
    """Fast-path two-colored quantum binomial; None means "use the oracle".

    Tiers: crystallographic entries (-2 on both sides) give the plain integer
    binomial in the ring; symmetric entries give the one-variable quantum
    binomial with [2] = -a; otherwise the alternating-factorial ratio is
    attempted in a field and None is returned whenever a needed factor is not
    invertible or the ring is not a field.
    """
    if not 0 <= m <= k:
        raise ValueError("need 0 <= m <= k")
    ring = cartan.ring
    if m == 0 or m == k:
        return ring.one
    if cartan.lift(s, t) == Fraction(-2) and cartan.lift(t, s) == Fraction(-2):
        return ring.from_int(math.comb(k, m))
    if cartan.entry(s, t) == cartan.entry(t, s):
        two = -cartan.entry(s, t)
        num = ring.one
        den = ring.one
        for j in range(1, m + 1):
            num = num * quantum_number(k - m + j, ring, two)
            den = den * quantum_number(j, ring, two)
        if not den.is_invertible():
            return None
        return num / den
    if not ring.is_field:
        return None
    num_factors = _alternating_factorial(k, s, t, cartan)
    den_factors = _alternating_factorial(m, s, t, cartan) + _alternating_factorial(
        k - m, s, t, cartan
    )
    value = ring.one
    for f in num_factors:
        value = value * f
    for f in den_factors:
        if not f.is_invertible():
            return None
        value = value / f
    return value

"""Exact arithmetic in Z, Z[tau] and Z[sqrt(2)].

tau = (1 + sqrt(5))/2 is the golden ratio, so tau^2 = tau + 1; the three
rings are the rings of integers of Q, Q(sqrt(5)) and Q(sqrt(2)).  Elements
are coefficient pairs (a, b) for a + b*omega in the basis {1, omega}, with
omega equal to 1, tau or sqrt(2) according to the field tag.  All three
rings are norm-Euclidean principal ideal domains, which keeps gcds,
contents, Hermite pivots and prime factorization algorithmic.

Associates are normalized deterministically: the canonical associate of a
nonzero element is totally positive with embedding ratio sigma1/sigma2 in
[1, ratio(eps)), eps being the fundamental totally positive unit (tau^2,
respectively 3 + 2*sqrt(2)).  Every sign test below is done with integer
arithmetic; no floating point enters any ring computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt

from .errors import DomainError, ParseInputError


class FieldTag(Enum):
    RATIONAL = "rational"
    ROOT_FIVE = "root5"
    ROOT_TWO = "root2"

    @property
    def degree(self) -> int:
        return 1 if self is FieldTag.RATIONAL else 2


# omega^2 = c + d*omega
_OMEGA_SQ = {
    FieldTag.RATIONAL: (1, 0),
    FieldTag.ROOT_FIVE: (1, 1),
    FieldTag.ROOT_TWO: (2, 0),
}

# conj(a + b*omega) = (a + e*b) + f*b*omega
_CONJ = {
    FieldTag.RATIONAL: (0, 1),
    FieldTag.ROOT_FIVE: (1, -1),
    FieldTag.ROOT_TWO: (0, -1),
}

_OMEGA_SYMBOL = {
    FieldTag.ROOT_FIVE: "w",
    FieldTag.ROOT_TWO: "w",
}


class RingElem:
    """An element a + b*omega of Z, Z[tau] or Z[sqrt(2)].

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("tag", "a", "b")

    def __init__(self, tag: FieldTag, a: int, b: int = 0):
        if tag.degree == 1 and b != 0:
            raise DomainError("rational integers have no omega part")
        self.tag = tag
        self.a = a
        self.b = b

    @classmethod
    def from_int(cls, tag: FieldTag, n: int) -> "RingElem":
        return cls(tag, n, 0)

    @classmethod
    def zero(cls, tag: FieldTag) -> "RingElem":
        return cls(tag, 0, 0)

    @classmethod
    def one(cls, tag: FieldTag) -> "RingElem":
        return cls(tag, 1, 0)

    @classmethod
    def omega(cls, tag: FieldTag) -> "RingElem":
        if tag.degree == 1:
            return cls(tag, 1, 0)
        return cls(tag, 0, 1)

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.tag is not self.tag:
                raise DomainError("mixed field tags")
            return other
        if isinstance(other, int):
            return RingElem(self.tag, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.tag, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.tag, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return RingElem(self.tag, -self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.tag.degree == 1:
            return RingElem(self.tag, self.a * o.a, 0)
        c, d = _OMEGA_SQ[self.tag]
        bb = self.b * o.b
        return RingElem(
            self.tag,
            self.a * o.a + c * bb,
            self.a * o.b + self.b * o.a + d * bb,
        )

    __rmul__ = __mul__

    def conj(self) -> "RingElem":
        e, f = _CONJ[self.tag]
        return RingElem(self.tag, self.a + e * self.b, f * self.b)

    def norm_signed(self) -> int:
        """Field norm as a signed integer."""
        if self.tag is FieldTag.RATIONAL:
            return self.a
        if self.tag is FieldTag.ROOT_FIVE:
            return self.a * self.a + self.a * self.b - self.b * self.b
        return self.a * self.a - 2 * self.b * self.b

    def norm_abs(self) -> int:
        return abs(self.norm_signed())

    def trace(self) -> int:
        if self.tag is FieldTag.RATIONAL:
            return self.a
        if self.tag is FieldTag.ROOT_FIVE:
            return 2 * self.a + self.b
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm_abs() == 1

    def is_totally_positive(self) -> bool:
        # both embeddings positive <=> positive norm and positive trace
        return self.norm_signed() > 0 and self.trace() > 0

    def exact_div(self, other: "RingElem"):
        """self / other if it lies in the ring, else None."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero ring element")
        if self.tag.degree == 1:
            if self.a % o.a:
                return None
            return RingElem(self.tag, self.a // o.a)
        # alpha/beta = alpha * conj(beta) / N(beta), degree 2 only
        num = self * o.conj()
        d = o.norm_signed()
        if num.a % d or num.b % d:
            return None
        return RingElem(self.tag, num.a // d, num.b // d)

    def divides(self, other: "RingElem") -> bool:
        return other.exact_div(self) is not None

    def canonical_associate(self) -> "RingElem":
        """The distinguished generator of the ideal (self).

        Zero maps to zero.  Over Z the result is |a|; over the quadratic
        rings it is the unique totally positive associate whose embedding
        ratio sigma1/sigma2 lies in [1, ratio(eps)).
        """
        if self.is_zero():
            return self
        if self.tag is FieldTag.RATIONAL:
            return RingElem(self.tag, abs(self.a))
        x = self
        if x.norm_signed() < 0:
            x = x * _NEG_NORM_UNIT[self.tag]
        if x.trace() < 0:
            x = -x
        eps = _TOT_POS_UNIT[self.tag]
        eps_inv = _TOT_POS_UNIT_INV[self.tag]
        eps_conj = eps.conj()
        while x.b < 0:  # sigma1 < sigma2: push the ratio up
            x = x * eps
        while (x * eps_conj).b >= 0:  # ratio >= ratio(eps): pull it down
            x = x * eps_inv
        return x

    def to_field(self) -> "FieldElem":
        return FieldElem(self.tag, Fraction(self.a), Fraction(self.b))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.a == other and self.b == 0
        return (
            isinstance(other, RingElem)
            and self.tag is other.tag
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.tag, self.a, self.b))

    def __str__(self):
        return _format_pair(self.tag, self.a, self.b)

    def __repr__(self):
        return f"RingElem({self.tag.value}, {self})"


# Units used by the normalization: eta has norm -1, eps = eta^2 generates
# the totally positive units.
_NEG_NORM_UNIT = {
    FieldTag.ROOT_FIVE: RingElem(FieldTag.ROOT_FIVE, 0, 1),     # tau
    FieldTag.ROOT_TWO: RingElem(FieldTag.ROOT_TWO, 1, 1),       # 1 + sqrt2
}
_TOT_POS_UNIT = {
    FieldTag.ROOT_FIVE: RingElem(FieldTag.ROOT_FIVE, 1, 1),     # tau^2
    FieldTag.ROOT_TWO: RingElem(FieldTag.ROOT_TWO, 3, 2),       # 3 + 2*sqrt2
}
_TOT_POS_UNIT_INV = {
    FieldTag.ROOT_FIVE: RingElem(FieldTag.ROOT_FIVE, 2, -1),
    FieldTag.ROOT_TWO: RingElem(FieldTag.ROOT_TWO, 3, -2),
}


class FieldElem:
    """An element of Q, Q(sqrt5) or Q(sqrt2) with Fraction coefficients."""

    __slots__ = ("tag", "a", "b")

    def __init__(self, tag: FieldTag, a, b=0):
        if tag.degree == 1 and b:
            raise DomainError("rational numbers have no omega part")
        self.tag = tag
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b if isinstance(b, Fraction) else Fraction(b)

    @classmethod
    def zero(cls, tag: FieldTag) -> "FieldElem":
        return cls(tag, 0, 0)

    @classmethod
    def one(cls, tag: FieldTag) -> "FieldElem":
        return cls(tag, 1, 0)

    @classmethod
    def omega(cls, tag: FieldTag) -> "FieldElem":
        if tag.degree == 1:
            return cls(tag, 1, 0)
        return cls(tag, 0, 1)

    @classmethod
    def from_int(cls, tag: FieldTag, n: int) -> "FieldElem":
        return cls(tag, Fraction(n), Fraction(0))

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.tag is not self.tag:
                raise DomainError("mixed field tags")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.tag, Fraction(other), Fraction(0))
        if isinstance(other, RingElem):
            if other.tag is not self.tag:
                raise DomainError("mixed field tags")
            return other.to_field()
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.tag, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.tag, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldElem(self.tag, -self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.tag.degree == 1:
            return FieldElem(self.tag, self.a * o.a, Fraction(0))
        c, d = _OMEGA_SQ[self.tag]
        bb = self.b * o.b
        return FieldElem(
            self.tag,
            self.a * o.a + c * bb,
            self.a * o.b + self.b * o.a + d * bb,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def inverse(self) -> "FieldElem":
        n = self.norm_signed()
        if n == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.tag.degree == 1:
            return FieldElem(self.tag, 1 / self.a)
        # 1/x = conj(x)/N(x), degree 2 only
        cj = self.conj()
        return FieldElem(self.tag, cj.a / n, cj.b / n)

    def conj(self) -> "FieldElem":
        e, f = _CONJ[self.tag]
        return FieldElem(self.tag, self.a + e * self.b, f * self.b)

    def norm_signed(self) -> Fraction:
        if self.tag is FieldTag.RATIONAL:
            return self.a
        if self.tag is FieldTag.ROOT_FIVE:
            return self.a * self.a + self.a * self.b - self.b * self.b
        return self.a * self.a - 2 * self.b * self.b

    def trace(self) -> Fraction:
        if self.tag is FieldTag.RATIONAL:
            return self.a
        if self.tag is FieldTag.ROOT_FIVE:
            return 2 * self.a + self.b
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def to_ring(self) -> RingElem:
        if not self.is_integral():
            raise DomainError(f"{self} is not integral")
        return RingElem(self.tag, int(self.a), int(self.b))

    def denominator_lcm(self) -> int:
        d = self.a.denominator
        e = self.b.denominator
        return d * e // _gcd_int(d, e)

    def sort_key(self):
        return (self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0
        if isinstance(other, RingElem):
            return self.tag is other.tag and self.a == other.a and self.b == other.b
        return (
            isinstance(other, FieldElem)
            and self.tag is other.tag
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.tag, self.a, self.b))

    def __str__(self):
        return _format_pair(self.tag, self.a, self.b)

    def __repr__(self):
        return f"FieldElem({self.tag.value}, {self})"


def _gcd_int(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return abs(x)


def _round_half_up(x: Fraction) -> int:
    # floor(x + 1/2); translation-equivariant, which makes Euclidean
    # remainders depend only on the residue class of the dividend
    num = 2 * x.numerator + x.denominator
    return num // (2 * x.denominator)


def euclid_divmod(alpha: RingElem, beta: RingElem) -> tuple[RingElem, RingElem]:
    """Return (q, r) with alpha = q*beta + r and N(r) < N(beta) in absolute value.

    The quotient starts from the nearest-integer rounding of the exact field
    quotient; a small offset search then picks the remainder of least
    absolute norm (ties broken by coefficients).  Both quadratic rings are
    norm-Euclidean, so the contract always holds.
    """
    if beta.is_zero():
        raise ZeroDivisionError("euclid_divmod by zero")
    if alpha.tag is not beta.tag:
        raise DomainError("mixed field tags")
    tag = alpha.tag
    if tag.degree == 1:
        qa = _round_half_up(Fraction(alpha.a, beta.a))
        qb = 0
        db_range = (0,)
    else:
        # alpha/beta = alpha * conj(beta) / N(beta); valid in degree 2 only
        num = alpha * beta.conj()
        d = beta.norm_signed()
        qa = _round_half_up(Fraction(num.a, d))
        qb = _round_half_up(Fraction(num.b, d))
        db_range = (0, -1, 1)
    best = None
    for da in (0, -1, 1):
        for db in db_range:
            q = RingElem(tag, qa + da, qb + db)
            r = alpha - q * beta
            key = (r.norm_abs(), r.a, r.b)
            if best is None or key < best[0]:
                best = (key, q, r)
    _, q, r = best
    if r.norm_abs() >= beta.norm_abs():
        raise ArithmeticError("euclidean division failed to reduce the norm")
    return q, r


def canonical_residue(value: RingElem, modulus: RingElem) -> tuple[RingElem, RingElem]:
    """Return (q, r) with r the canonical representative of value mod modulus.

    The representative depends only on the coset value + modulus*O, which
    makes it usable for canonical matrix normal forms.  Among the small
    remainders reachable from the Euclidean one it minimizes absolute norm,
    then absolute coefficients, preferring nonnegative ones (so 1 mod 2
    reduces to 1, not -1).
    """
    q0, r0 = euclid_divmod(value, modulus)
    best = None
    for t in (0, -1, 1):
        r = r0 - modulus * t
        key = (r.norm_abs(), abs(r.a), abs(r.b), r.a < 0, r.b < 0)
        if best is None or key < best[0]:
            best = (key, q0 + t, r)
    _, q, r = best
    return q, r


def ring_gcd(x: RingElem, y: RingElem) -> RingElem:
    """Greatest common divisor, returned as a canonical associate."""
    if x.tag is not y.tag:
        raise DomainError("mixed field tags")
    if x.is_zero() and y.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    while not y.is_zero():
        x, y = y, euclid_divmod(x, y)[1]
    return x.canonical_associate()


class SplittingClass(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def splitting_class(p: int, tag: FieldTag) -> SplittingClass:
    """Behaviour of the rational prime p in the ring of integers."""
    if p < 2 or not _is_prime(p):
        raise DomainError(f"{p} is not a prime")
    if tag is FieldTag.RATIONAL:
        return SplittingClass.SPLIT  # degenerate: p stays prime and has norm p
    if tag is FieldTag.ROOT_FIVE:
        if p == 5:
            return SplittingClass.RAMIFIED
        return SplittingClass.SPLIT if p % 5 in (1, 4) else SplittingClass.INERT
    if p == 2:
        return SplittingClass.RAMIFIED
    return SplittingClass.SPLIT if p % 8 in (1, 7) else SplittingClass.INERT


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _mod_sqrt_scan(d: int, p: int) -> int:
    # brute scan; p stays desk-scale small here
    d %= p
    for x in range(p):
        if x * x % p == d:
            return x
    raise DomainError(f"{d} is not a square mod {p}")


def primes_above(p: int, tag: FieldTag) -> list[RingElem]:
    """Canonical primes of the ring lying over the rational prime p."""
    cls = splitting_class(p, tag)
    if tag is FieldTag.RATIONAL:
        return [RingElem(tag, p)]
    if cls is SplittingClass.INERT:
        return [RingElem(tag, p).canonical_associate()]
    if cls is SplittingClass.RAMIFIED:
        pi = RingElem(tag, 0, 1) if tag is FieldTag.ROOT_TWO else RingElem(tag, -1, 2)
        return [pi.canonical_associate()]
    # split: gcd(p, omega_hat - omega) with omega_hat a mod-p image of omega
    if tag is FieldTag.ROOT_FIVE:
        x = _mod_sqrt_scan(5, p)
        omega_hat = (1 + x) * pow(2, -1, p) % p
    else:
        omega_hat = _mod_sqrt_scan(2, p)
    pi = ring_gcd(RingElem(tag, p), RingElem(tag, omega_hat, -1))
    if pi.norm_abs() != p:
        raise ArithmeticError(f"failed to split {p}")
    pair = sorted({pi, pi.conj().canonical_associate()}, key=lambda z: (z.a, z.b))
    return pair


@dataclass(frozen=True)
class Factorization:
    """unit * product(prime^exponent) over the ambient ring."""

    unit: RingElem
    primes: tuple[tuple[RingElem, int], ...]

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def value(self) -> RingElem:
        out = self.unit
        for pi, e in self.primes:
            for _ in range(e):
                out = out * pi
        return out


def factor(alpha: RingElem) -> Factorization:
    """Factor a nonzero element into canonical primes times a unit."""
    if alpha.is_zero():
        raise DomainError("cannot factor zero")
    rem = alpha
    pairs = []
    for p, _ in factor_int(alpha.norm_abs()):
        for pi in primes_above(p, alpha.tag):
            k = 0
            while True:
                q = rem.exact_div(pi)
                if q is None:
                    break
                rem = q
                k += 1
            if k:
                pairs.append((pi, k))
    if not rem.is_unit():
        raise ArithmeticError(f"factorization of {alpha} left non-unit {rem}")
    return Factorization(rem, tuple(pairs))


def factor_int(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization of a positive integer."""
    if n <= 0:
        raise DomainError("factor_int needs a positive integer")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def norm_class_reps(tag: FieldTag, m: int) -> list[RingElem]:
    """Totally positive elements of norm m, one canonical representative
    per orbit of the totally positive unit group.

    Empty exactly when m is not a norm; over Q the single representative
    is m itself.
    """
    if m < 1:
        raise DomainError("norm must be positive")
    if tag is FieldTag.RATIONAL:
        return [RingElem(tag, m)]
    found = set()
    if tag is FieldTag.ROOT_FIVE:
        # a^2 + a*b - b^2 = m; canonical reps satisfy 0 <= b < sqrt(m)
        for b in range(isqrt(m) + 2):
            disc = 5 * b * b + 4 * m
            s = isqrt(disc)
            if s * s != disc:
                continue
            if (s - b) % 2 == 0:
                cand = RingElem(tag, (s - b) // 2, b)
                if cand.norm_signed() == m and cand.is_totally_positive():
                    found.add(cand.canonical_associate())
    else:
        # a^2 - 2*b^2 = m; canonical reps satisfy 0 <= b < 2*sqrt(m)
        for b in range(2 * isqrt(m) + 3):
            t = m + 2 * b * b
            s = isqrt(t)
            if s * s != t:
                continue
            cand = RingElem(tag, s, b)
            if cand.is_totally_positive():
                found.add(cand.canonical_associate())
    return sorted(found, key=lambda z: (z.a, z.b))


# ---------------------------------------------------------------------------
# text syntax: "a", "a+b*w", "a/c + b/d*w" with w = tau or sqrt(2) by tag


def _format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _format_pair(tag: FieldTag, a, b) -> str:
    a = Fraction(a)
    b = Fraction(b)
    if b == 0:
        return _format_fraction(a)
    wpart = "w" if abs(b) == 1 else f"{_format_fraction(abs(b))}*w"
    sign = "-" if b < 0 else "+"
    if a == 0:
        return wpart if b > 0 else f"-{wpart}"
    return f"{_format_fraction(a)}{sign}{wpart}"


def _split_terms(text: str) -> list[str]:
    """Split on top-level + and - (keeping signs), honouring parentheses."""
    terms = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseInputError(f"unbalanced parentheses in {text!r}")
        if ch in "+-" and depth == 0 and cur and cur[-1] not in "+-*/(":
            terms.append(cur)
            cur = ch
            continue
        cur += ch
    if depth:
        raise ParseInputError(f"unbalanced parentheses in {text!r}")
    if cur:
        terms.append(cur)
    return terms


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseInputError(f"bad rational literal {text!r}") from exc


def parse_field_elem(text: str, tag: FieldTag) -> FieldElem:
    """Parse 'a', 'a+b*w', 'a/c - b/d*w' (w = tau or sqrt(2) by tag)."""
    stripped = text.replace(" ", "")
    if not stripped:
        raise ParseInputError("empty ring element")
    a = Fraction(0)
    b = Fraction(0)
    for term in _split_terms(stripped):
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ParseInputError(f"dangling sign in {text!r}")
        factors = term.split("*")
        has_w = "w" in factors
        numeric = [f for f in factors if f != "w"]
        if len(factors) - len(numeric) > 1 or len(numeric) > 1:
            raise ParseInputError(f"bad term {term!r} in {text!r}")
        coeff = _parse_rational(numeric[0]) if numeric else Fraction(1)
        if has_w:
            if tag.degree == 1:
                raise ParseInputError("'w' is not available over the rationals")
            b += sign * coeff
        else:
            a += sign * coeff
    return FieldElem(tag, a, b)


def parse_ring_elem(text: str, tag: FieldTag) -> RingElem:
    fe = parse_field_elem(text, tag)
    if not fe.is_integral():
        raise ParseInputError(f"{text!r} is not integral")
    return fe.to_ring()


def format_field_elem(x: FieldElem) -> str:
    return str(x)


def format_ring_elem(x: RingElem) -> str:
    return str(x)

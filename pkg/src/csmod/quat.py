"""Quaternions with exact field coordinates and the Cayley rotation map.

A quaternion is stored in the basis {1, i, j, k} with FieldElem
coordinates, so every derived quantity (reduced norm, rotation matrix,
cosine of the rotation angle) stays exact.  Nothing here normalizes by
content or units; that belongs to the order layer.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, ParseInputError
from .rings import (
    FieldElem,
    FieldTag,
    RingElem,
    _split_terms,
    format_field_elem,
    parse_field_elem,
)


def _to_field(tag: FieldTag, value) -> FieldElem:
    if isinstance(value, FieldElem):
        if value.tag is not tag:
            raise DomainError("mixed field tags")
        return value
    if isinstance(value, RingElem):
        if value.tag is not tag:
            raise DomainError("mixed field tags")
        return value.to_field()
    if isinstance(value, (int, Fraction)):
        return FieldElem(tag, Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as a field element")


class Quat:
    """Quaternion x0 + x1*i + x2*j + x3*k over one of the base fields."""

    __slots__ = ("tag", "x0", "x1", "x2", "x3")

    def __init__(self, tag: FieldTag, x0, x1=0, x2=0, x3=0):
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "x0", _to_field(tag, x0))
        object.__setattr__(self, "x1", _to_field(tag, x1))
        object.__setattr__(self, "x2", _to_field(tag, x2))
        object.__setattr__(self, "x3", _to_field(tag, x3))

    def __setattr__(self, name, value):
        raise AttributeError("Quat is immutable")

    @classmethod
    def zero(cls, tag: FieldTag) -> "Quat":
        return cls(tag, 0)

    @classmethod
    def one(cls, tag: FieldTag) -> "Quat":
        return cls(tag, 1)

    @classmethod
    def i(cls, tag: FieldTag) -> "Quat":
        return cls(tag, 0, 1)

    @classmethod
    def j(cls, tag: FieldTag) -> "Quat":
        return cls(tag, 0, 0, 1)

    @classmethod
    def k(cls, tag: FieldTag) -> "Quat":
        return cls(tag, 0, 0, 0, 1)

    @classmethod
    def scalar(cls, tag: FieldTag, value) -> "Quat":
        return cls(tag, value)

    def coords(self) -> tuple[FieldElem, FieldElem, FieldElem, FieldElem]:
        return (self.x0, self.x1, self.x2, self.x3)

    def _coerce(self, other):
        if isinstance(other, Quat):
            if other.tag is not self.tag:
                raise DomainError("mixed field tags")
            return other
        try:
            return Quat(self.tag, _to_field(self.tag, other))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quat(self.tag, self.x0 + o.x0, self.x1 + o.x1,
                    self.x2 + o.x2, self.x3 + o.x3)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quat(self.tag, self.x0 - o.x0, self.x1 - o.x1,
                    self.x2 - o.x2, self.x3 - o.x3)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Quat(self.tag, -self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a0, a1, a2, a3 = self.coords()
        b0, b1, b2, b3 = o.coords()
        return Quat(
            self.tag,
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        # only reached for scalars; scalars commute with everything
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self

    def __truediv__(self, other):
        try:
            s = _to_field(self.tag, other)
        except TypeError:
            return NotImplemented
        inv = s.inverse()
        return Quat(self.tag, self.x0 * inv, self.x1 * inv,
                    self.x2 * inv, self.x3 * inv)

    def conj(self) -> "Quat":
        return Quat(self.tag, self.x0, -self.x1, -self.x2, -self.x3)

    def nr(self) -> FieldElem:
        """Reduced norm, the sum of the squared coordinates."""
        a0, a1, a2, a3 = self.coords()
        return a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3

    def trace(self) -> FieldElem:
        return self.x0 + self.x0

    def inverse(self) -> "Quat":
        n = self.nr()
        if n.is_zero():
            raise ZeroDivisionError("inverse of the zero quaternion")
        return self.conj() / n

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords())

    def is_scalar(self) -> bool:
        return self.x1.is_zero() and self.x2.is_zero() and self.x3.is_zero()

    def is_pure(self) -> bool:
        return self.x0.is_zero()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Quat) else other
        if o is NotImplemented or not isinstance(o, Quat):
            return NotImplemented
        return self.tag is o.tag and self.coords() == o.coords()

    def __hash__(self):
        return hash((self.tag, self.coords()))

    def __str__(self):
        return format_quat(self)

    def __repr__(self):
        return f"Quat[{self.tag.value}]({format_quat(self)})"


def im_re(q: Quat) -> tuple[FieldElem, tuple[FieldElem, FieldElem, FieldElem]]:
    """Split q into its real part and imaginary 3-vector."""
    return q.x0, (q.x1, q.x2, q.x3)


class Mat3K:
    """3x3 matrix with exact field entries."""

    __slots__ = ("tag", "rows")

    def __init__(self, tag: FieldTag, rows):
        object.__setattr__(self, "tag", tag)
        coerced = tuple(
            tuple(_to_field(tag, e) for e in row) for row in rows
        )
        if len(coerced) != 3 or any(len(r) != 3 for r in coerced):
            raise DomainError("Mat3K needs exactly 3x3 entries")
        object.__setattr__(self, "rows", coerced)

    def __setattr__(self, name, value):
        raise AttributeError("Mat3K is immutable")

    @classmethod
    def identity(cls, tag: FieldTag) -> "Mat3K":
        return cls(tag, [[int(r == c) for c in range(3)] for r in range(3)])

    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def __mul__(self, other):
        if not isinstance(other, Mat3K):
            return NotImplemented
        if other.tag is not self.tag:
            raise DomainError("mixed field tags")
        return Mat3K(self.tag, [
            [
                sum((self.rows[r][t] * other.rows[t][c] for t in range(3)),
                    FieldElem(self.tag, 0))
                for c in range(3)
            ]
            for r in range(3)
        ])

    def apply(self, vec):
        """Matrix-vector product; vec is any length-3 sequence over K."""
        v = tuple(_to_field(self.tag, e) for e in vec)
        if len(v) != 3:
            raise DomainError("expected a 3-vector")
        return tuple(
            sum((self.rows[r][t] * v[t] for t in range(3)),
                FieldElem(self.tag, 0))
            for r in range(3)
        )

    def transpose(self) -> "Mat3K":
        return Mat3K(self.tag, [
            [self.rows[c][r] for c in range(3)] for r in range(3)
        ])

    def det(self) -> FieldElem:
        m = self.rows
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def trace(self) -> FieldElem:
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def __eq__(self, other):
        if not isinstance(other, Mat3K):
            return NotImplemented
        return self.tag is other.tag and self.rows == other.rows

    def __hash__(self):
        return hash((self.tag, self.rows))

    def __str__(self):
        body = "; ".join(
            ", ".join(format_field_elem(e) for e in row) for row in self.rows
        )
        return f"[{body}]"

    __repr__ = __str__


def cayley_matrix(q: Quat) -> Mat3K:
    """Rotation matrix of conjugation by q, acting on pure quaternions.

    Satisfies Im(q*a*q^-1) = R*Im(a) for every quaternion a, and is
    invariant under rescaling q by a nonzero field scalar.
    """
    if q.is_zero():
        raise DomainError("the zero quaternion has no rotation matrix")
    n = q.nr()
    k, l, m, v = q.coords()
    two = FieldElem(q.tag, 2)
    rows = [
        [k * k + l * l - m * m - v * v,
         two * (l * m - k * v),
         two * (k * m + l * v)],
        [two * (k * v + l * m),
         k * k - l * l + m * m - v * v,
         two * (m * v - k * l)],
        [two * (l * v - k * m),
         two * (k * l + m * v),
         k * k - l * l - m * m + v * v],
    ]
    return Mat3K(q.tag, [[e / n for e in row] for row in rows])


def axis_angle(q: Quat) -> tuple[tuple[FieldElem, FieldElem, FieldElem], FieldElem]:
    """Rotation axis and exact cosine of the rotation angle of R(q)."""
    if q.is_scalar():
        raise DomainError("a scalar quaternion has no rotation axis")
    k, l, m, v = q.coords()
    cos = (k * k - l * l - m * m - v * v) / q.nr()
    return (l, m, v), cos


_UNIT_INDEX = {"i": 1, "j": 2, "k": 3}


def _strip_outer_parens(text: str) -> str:
    if not (text.startswith("(") and text.endswith(")")):
        return text
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return text[1:-1] if pos == len(text) - 1 else text
    return text


def parse_quat(text: str, tag: FieldTag) -> Quat:
    """Parse 'x0 + x1*i + x2*j + x3*k' with field-element coefficients.

    Composite coefficients of i, j, k must be parenthesized, e.g.
    '(1+w)*i - 2*j'.
    """
    stripped = text.replace(" ", "")
    if not stripped:
        raise ParseInputError("empty quaternion")
    coords = [FieldElem(tag, 0) for _ in range(4)]
    for term in _split_terms(stripped):
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ParseInputError(f"dangling sign in {text!r}")
        if term in _UNIT_INDEX:
            idx, coeff = _UNIT_INDEX[term], FieldElem(tag, 1)
        elif len(term) >= 3 and term[-2] == "*" and term[-1] in _UNIT_INDEX:
            idx = _UNIT_INDEX[term[-1]]
            coeff = parse_field_elem(_strip_outer_parens(term[:-2]), tag)
        else:
            idx, coeff = 0, parse_field_elem(term, tag)
        if sign < 0:
            coeff = -coeff
        coords[idx] = coords[idx] + coeff
    return Quat(tag, *coords)


def format_quat(q: Quat) -> str:
    parts = []
    if not q.x0.is_zero():
        parts.append(format_field_elem(q.x0))
    for comp, sym in ((q.x1, "i"), (q.x2, "j"), (q.x3, "k")):
        if comp.is_zero():
            continue
        s = format_field_elem(comp)
        if s == "1":
            parts.append(sym)
        elif s == "-1":
            parts.append("-" + sym)
        elif "+" in s[1:] or "-" in s[1:]:
            parts.append(f"({s})*{sym}")
        else:
            parts.append(f"{s}*{sym}")
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        out += part if part.startswith("-") else "+" + part
    return out

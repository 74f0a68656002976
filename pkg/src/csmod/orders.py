"""The concrete quaternion orders and exhaustive norm-class enumeration.

Four orders are provided: the half-integer order over the rationals,
the golden-ratio order over Q(sqrt 5), the root-two order over
Q(sqrt 2) (these three are maximal), and the plain integer-coordinate
order available over every base field as a reference.

Enumeration of elements by reduced norm embeds an order into Euclidean
space through the totally positive quadratic form q |-> Tr(nr(q)),
which is integral of rank 4 (degree-1 field) or 8 (degree-2 fields) on
a Z-basis.  For a target norm value, bounded lattice search against an
exact LDL decomposition of the Gram matrix makes the search provably
exhaustive; right ideals are then deduplicated by the canonical basis
of q*O, which avoids walking the (infinite, in the degree-2 cases)
unit group.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, ResourceCapError
from .modlat import Ambient, OModule, hnf_canonical
from .quat import Quat
from .rings import FieldElem, FieldTag, RingElem, norm_class_reps, ring_gcd

DEFAULT_ENUM_CAP = 10_000


def _ldl(gram):
    """Exact LDL^t decomposition of a positive definite rational matrix."""
    n = len(gram)
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for j in range(n):
        s = Fraction(gram[j][j])
        for k in range(j):
            s -= lower[j][k] * lower[j][k] * diag[k]
        if s <= 0:
            raise ArithmeticError("form is not positive definite")
        diag[j] = s
        lower[j][j] = Fraction(1)
        for i in range(j + 1, n):
            v = Fraction(gram[i][j])
            for k in range(j):
                v -= lower[i][k] * lower[j][k] * diag[k]
            lower[i][j] = v / s
    return lower, diag


def _solve_quadratic(lower, diag, target: int):
    """All integer vectors x with sum_j d_j (x_j + c_j)^2 == target,
    where c_j = sum_{i>j} L_ij x_i.  Scans coordinates outward from the
    real minimum of each level, so the search is exhaustive."""
    n = len(diag)
    x = [0] * n
    out = []

    def center(j):
        c = Fraction(0)
        for i in range(j + 1, n):
            c += lower[i][j] * x[i]
        return c

    def rec(j, rem):
        c = center(j)
        base = (-c).__floor__()
        if j == 0:
            for x0 in _scan(base, c, diag[0], rem):
                if diag[0] * (x0 + c) ** 2 == rem:
                    x[0] = x0
                    out.append(tuple(x))
            return
        for xj in _scan(base, c, diag[j], rem):
            x[j] = xj
            rec(j - 1, rem - diag[j] * (xj + c) ** 2)
        x[j] = 0

    def _scan(base, c, d, rem):
        vals = []
        v = base
        while d * (v + c) ** 2 <= rem:
            vals.append(v)
            v -= 1
        v = base + 1
        while d * (v + c) ** 2 <= rem:
            vals.append(v)
            v += 1
        return vals

    rec(n - 1, Fraction(target))
    return out


class QuatOrder:
    """A fixed order with its canonical module basis and search data."""

    __slots__ = ("name", "field_tag", "basis", "maximal", "module",
                 "_zgens", "_na", "_nb", "_ldl", "_enum_cache",
                 "_units_cache")

    def __init__(self, name: str, field_tag: FieldTag, basis, maximal: bool):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "field_tag", field_tag)
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "maximal", maximal)
        object.__setattr__(self, "module", hnf_canonical(
            field_tag, Ambient.QUAT, [b.coords() for b in self.basis]
        ))
        degree = field_tag.degree
        zgens = list(self.basis)
        if degree == 2:
            omega = FieldElem.omega(field_tag)
            zgens += [b * omega for b in self.basis]
        object.__setattr__(self, "_zgens", tuple(zgens))
        rank = len(zgens)
        na = [[0] * rank for _ in range(rank)]
        nb = [[0] * rank for _ in range(rank)]
        for s in range(rank):
            for t in range(rank):
                twice = FieldElem(field_tag, 0)
                for cs, ct in zip(zgens[s].coords(), zgens[t].coords()):
                    twice = twice + cs * ct
                twice = twice + twice
                if not twice.is_integral():
                    raise ArithmeticError("order basis is not integral")
                r = twice.to_ring()
                na[s][t], nb[s][t] = r.a, r.b
        if degree == 1:
            gram = na
        elif field_tag is FieldTag.ROOT_FIVE:
            gram = [[2 * na[s][t] + nb[s][t] for t in range(rank)]
                    for s in range(rank)]
        else:
            gram = [[2 * na[s][t] for t in range(rank)] for s in range(rank)]
        object.__setattr__(self, "_na", na)
        object.__setattr__(self, "_nb", nb)
        object.__setattr__(self, "_ldl", _ldl(gram))
        object.__setattr__(self, "_enum_cache", {})
        object.__setattr__(self, "_units_cache", None)

    def __setattr__(self, name, value):
        raise AttributeError("QuatOrder is immutable")

    def __repr__(self):
        return f"QuatOrder({self.name})"

    # -- membership ---------------------------------------------------

    def _check_tag(self, q: Quat) -> None:
        if q.tag is not self.field_tag:
            raise DomainError("field tag does not match the order")

    def coordinates(self, q: Quat):
        self._check_tag(q)
        return self.module.coordinates(q.coords())

    def contains(self, q: Quat) -> bool:
        return self.coordinates(q) is not None

    def content(self, q: Quat) -> RingElem:
        """Canonical gcd of the coordinates; largest scalar divisor in O."""
        coords = self.coordinates(q)
        if coords is None:
            raise DomainError("element is not in the order")
        return self._content_of(coords)

    def _content_of(self, coords) -> RingElem:
        acc = None
        for c in coords:
            if c.is_zero():
                continue
            acc = c if acc is None else ring_gcd(acc, c)
        if acc is None:
            raise DomainError("content of zero is undefined")
        return acc.canonical_associate()

    def is_unit(self, q: Quat) -> bool:
        if not self.contains(q):
            raise DomainError("element is not in the order")
        return q.nr().to_ring().is_unit()

    def is_reduced(self, q: Quat) -> bool:
        if not self.maximal:
            raise DomainError(
                "reducedness is defined here for the maximal orders only"
            )
        coords = self.coordinates(q)
        if coords is None:
            raise DomainError("element is not in the order")
        if q.is_zero():
            raise DomainError("the zero element is not reduced")
        if not self._content_of(coords).is_unit():
            return False
        if self._strips_even_norms():
            return q.nr().to_ring().norm_abs() % 2 == 1
        return True

    def _strips_even_norms(self) -> bool:
        # only the rational maximal order has a ramified two-sided prime
        return self.maximal and self.field_tag is FieldTag.RATIONAL

    def reduce_generator(self, q: Quat) -> Quat:
        """Divide out the content (and any two-sided even-norm factor),
        keeping the conjugated order q O q^-1 unchanged."""
        coords = self.coordinates(q)
        if coords is None:
            raise DomainError("element is not in the order")
        if q.is_zero():
            raise DomainError("cannot reduce zero")
        q = q / self._content_of(coords).to_field()
        if self._strips_even_norms():
            half = Fraction(1, 2)
            inv_one_plus_i = Quat(self.field_tag, half, -half)
            while q.nr().to_ring().norm_abs() % 2 == 0:
                q = q * inv_one_plus_i
        return q

    # -- ideals and enumeration ----------------------------------------

    def right_ideal(self, q: Quat) -> OModule:
        """Canonical module basis of q * O."""
        self._check_tag(q)
        if q.is_zero():
            raise DomainError("zero generates no full-rank ideal")
        return hnf_canonical(
            self.field_tag, Ambient.QUAT,
            [(q * b).coords() for b in self.basis],
        )

    def conjugated_order_module(self, q: Quat) -> OModule:
        """Canonical module basis of q * O * q^-1."""
        self._check_tag(q)
        inv = q.inverse()
        return hnf_canonical(
            self.field_tag, Ambient.QUAT,
            [(q * b * inv).coords() for b in self.basis],
        )

    def _lattice_elements(self, value: RingElem):
        """All order elements with reduced norm exactly the given value."""
        lower, diag = self._ldl
        target = 2 * value.trace()
        rank = len(self._zgens)
        degree = self.field_tag.degree
        out = []
        for v in _solve_quadratic(lower, diag, target):
            qa = sum(v[s] * self._na[s][t] * v[t]
                     for s in range(rank) for t in range(rank))
            if qa != 2 * value.a:
                continue
            if degree == 2:
                qb = sum(v[s] * self._nb[s][t] * v[t]
                         for s in range(rank) for t in range(rank))
                if qb != 2 * value.b:
                    continue
            if degree == 1:
                coords = tuple(RingElem(self.field_tag, v[s])
                               for s in range(4))
            else:
                coords = tuple(RingElem(self.field_tag, v[s], v[s + 4])
                               for s in range(4))
            q = Quat.zero(self.field_tag)
            for lam, b in zip(coords, self.basis):
                q = q + b * lam
            out.append((q, coords))
        return out

    def norm_one_units(self):
        """Every element of reduced norm one (a finite group)."""
        if self._units_cache is None:
            found = [q for q, _ in self._lattice_elements(
                RingElem(self.field_tag, 1))]
            object.__setattr__(self, "_units_cache", tuple(found))
        return list(self._units_cache)

    def enumerate_by_index(self, m: int, cap: int | None = None):
        """One reduced representative per right ideal q*O with
        norm_abs(nr q) = m."""
        if m < 1:
            raise DomainError("index must be a positive integer")
        limit = DEFAULT_ENUM_CAP if cap is None else cap
        if m > limit:
            raise ResourceCapError(
                f"norm {m} exceeds the enumeration cap {limit}"
            )
        if not self.maximal:
            raise DomainError(
                "enumeration by reduced norm needs a maximal order"
            )
        if m in self._enum_cache:
            return list(self._enum_cache[m])
        reps = {}
        if not (self._strips_even_norms() and m % 2 == 0):
            for value in norm_class_reps(self.field_tag, m):
                for q, coords in self._lattice_elements(value):
                    if not self._content_of(coords).is_unit():
                        continue
                    reps.setdefault(self.right_ideal(q), q)
        result = tuple(reps.values())
        self._enum_cache[m] = result
        return list(result)


def _f(tag, a, b=0):
    return FieldElem(tag, Fraction(a), Fraction(b))


@lru_cache(maxsize=None)
def hurwitz() -> QuatOrder:
    tag = FieldTag.RATIONAL
    half = Fraction(1, 2)
    return QuatOrder("hurwitz", tag, [
        Quat.one(tag),
        Quat.i(tag),
        Quat.j(tag),
        Quat(tag, half, half, half, half),
    ], maximal=True)


@lru_cache(maxsize=None)
def icosian() -> QuatOrder:
    tag = FieldTag.ROOT_FIVE
    half = Fraction(1, 2)
    return QuatOrder("icosian", tag, [
        Quat.one(tag),
        Quat.i(tag),
        Quat(tag, half, half, half, half),
        Quat(tag, _f(tag, half, -half), _f(tag, 0, half), 0, _f(tag, half)),
    ], maximal=True)


@lru_cache(maxsize=None)
def icosian_conj() -> QuatOrder:
    base = icosian()
    basis = [
        Quat(base.field_tag, *(c.conj() for c in b.coords()))
        for b in base.basis
    ]
    return QuatOrder("icosian-conj", base.field_tag, basis, maximal=True)


@lru_cache(maxsize=None)
def octahedral() -> QuatOrder:
    tag = FieldTag.ROOT_TWO
    half = Fraction(1, 2)
    halfw = _f(tag, 0, half)
    return QuatOrder("octahedral", tag, [
        Quat.one(tag),
        Quat(tag, halfw, halfw, 0, 0),
        Quat(tag, halfw, 0, halfw, 0),
        Quat(tag, half, half, half, half),
    ], maximal=True)


_TAG_SHORT = {FieldTag.RATIONAL: "q", FieldTag.ROOT_FIVE: "r5",
              FieldTag.ROOT_TWO: "r2"}


@lru_cache(maxsize=None)
def lipschitz(tag: FieldTag) -> QuatOrder:
    return QuatOrder(f"lipschitz-{_TAG_SHORT[tag]}", tag, [
        Quat.one(tag), Quat.i(tag), Quat.j(tag), Quat.k(tag),
    ], maximal=False)


ORDER_KEYS = ("hurwitz", "icosian", "octahedral",
              "lipschitz-q", "lipschitz-r5", "lipschitz-r2")


def order_by_key(key: str) -> QuatOrder:
    if key == "hurwitz":
        return hurwitz()
    if key == "icosian":
        return icosian()
    if key == "octahedral":
        return octahedral()
    if key == "lipschitz-q":
        return lipschitz(FieldTag.RATIONAL)
    if key == "lipschitz-r5":
        return lipschitz(FieldTag.ROOT_FIVE)
    if key == "lipschitz-r2":
        return lipschitz(FieldTag.ROOT_TWO)
    raise DomainError(f"unknown order {key!r}; pick one of {ORDER_KEYS}")

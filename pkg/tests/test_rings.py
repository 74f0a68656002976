import random
from fractions import Fraction

import pytest

from csmod.errors import DomainError, ParseInputError
from csmod.rings import (
    FieldElem,
    FieldTag,
    RingElem,
    SplittingClass,
    euclid_divmod,
    factor,
    factor_int,
    norm_class_reps,
    parse_field_elem,
    parse_ring_elem,
    primes_above,
    ring_gcd,
    splitting_class,
)

QUADRATIC_TAGS = [FieldTag.ROOT_FIVE, FieldTag.ROOT_TWO]
ALL_TAGS = [FieldTag.RATIONAL] + QUADRATIC_TAGS


def rnd_elem(rng, tag, span=9):
    if tag.degree == 1:
        return RingElem(tag, rng.randint(-span, span))
    return RingElem(tag, rng.randint(-span, span), rng.randint(-span, span))


def test_norm_examples():
    tau = FieldTag.ROOT_FIVE
    rt2 = FieldTag.ROOT_TWO
    assert RingElem(tau, 3, 1).norm_signed() == 11
    assert RingElem(tau, 0, 1).norm_signed() == -1
    assert RingElem(rt2, 2, 1).norm_signed() == 2
    assert RingElem(rt2, 1, 1).norm_signed() == -1
    assert RingElem(FieldTag.RATIONAL, -7).norm_abs() == 7


def test_trace_and_conj():
    tau = FieldTag.ROOT_FIVE
    x = RingElem(tau, 3, 1)
    assert x.trace() == 7
    assert x.conj() == RingElem(tau, 4, -1)
    assert x.conj().conj() == x
    rt2 = FieldTag.ROOT_TWO
    y = RingElem(rt2, 5, -2)
    assert y.conj() == RingElem(rt2, 5, 2)
    assert y.trace() == 10


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_norm_multiplicative_and_conj_involution(tag):
    rng = random.Random(101)
    for _ in range(1000):
        x = rnd_elem(rng, tag)
        y = rnd_elem(rng, tag)
        assert (x * y).norm_signed() == x.norm_signed() * y.norm_signed()
        assert (x * y).conj() == x.conj() * y.conj()
        assert (x + y).conj() == x.conj() + y.conj()
        assert x.conj().conj() == x
        if tag.degree == 2:
            # norm and trace agree with x * conj(x) and x + conj(x)
            assert x * x.conj() == RingElem(tag, x.norm_signed())
            assert x + x.conj() == RingElem(tag, x.trace())
        else:
            assert x.norm_signed() == x.a and x.trace() == x.a


def test_omega_squared_rule():
    tau = RingElem.omega(FieldTag.ROOT_FIVE)
    assert tau * tau == tau + 1
    rt2 = RingElem.omega(FieldTag.ROOT_TWO)
    assert rt2 * rt2 == RingElem(FieldTag.ROOT_TWO, 2)


def test_euclid_divmod_example():
    # dividing 5 by 3+tau must leave a remainder of absolute norm < 11
    tau = FieldTag.ROOT_FIVE
    q, r = euclid_divmod(RingElem(tau, 5), RingElem(tau, 3, 1))
    assert RingElem(tau, 5) == q * RingElem(tau, 3, 1) + r
    assert r.norm_abs() < 11


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_euclid_divmod_contract(tag):
    rng = random.Random(202)
    for _ in range(1000):
        a = rnd_elem(rng, tag, 40)
        b = rnd_elem(rng, tag, 12)
        if b.is_zero():
            continue
        q, r = euclid_divmod(a, b)
        assert a == q * b + r
        assert r.norm_abs() < b.norm_abs()


@pytest.mark.parametrize("tag", QUADRATIC_TAGS)
def test_euclid_remainder_depends_only_on_coset(tag):
    rng = random.Random(303)
    for _ in range(400):
        a = rnd_elem(rng, tag, 30)
        b = rnd_elem(rng, tag, 9)
        if b.is_zero():
            continue
        shift = rnd_elem(rng, tag, 5)
        _, r1 = euclid_divmod(a, b)
        _, r2 = euclid_divmod(a + shift * b, b)
        assert r1 == r2


def test_gcd_examples():
    tau = FieldTag.ROOT_FIVE
    g = ring_gcd(RingElem(tau, 3, 1), RingElem(tau, 11))
    # an associate of 3+tau: same norm, and it divides 3+tau
    assert g.norm_abs() == 11
    assert g.divides(RingElem(tau, 3, 1))
    assert ring_gcd(RingElem(tau, 4), RingElem(tau, 6)) == RingElem(tau, 2)
    with pytest.raises(DomainError):
        ring_gcd(RingElem(tau, 0), RingElem(tau, 0))


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_gcd_contract(tag):
    rng = random.Random(404)
    for _ in range(500):
        x = rnd_elem(rng, tag, 25)
        y = rnd_elem(rng, tag, 25)
        if x.is_zero() and y.is_zero():
            continue
        g = ring_gcd(x, y)
        assert g == g.canonical_associate()
        if not x.is_zero():
            assert g.divides(x)
        if not y.is_zero():
            assert g.divides(y)
        # any common divisor divides the gcd
        d = rnd_elem(rng, tag, 4)
        if not d.is_zero():
            if d.divides(x) and d.divides(y):
                assert d.divides(g)


@pytest.mark.parametrize("tag", QUADRATIC_TAGS)
def test_canonical_associate_properties(tag):
    rng = random.Random(505)
    # eta is the fundamental unit (norm -1) of the ring
    eta = RingElem(tag, 1, 1) if tag is FieldTag.ROOT_TWO else RingElem(tag, 0, 1)
    one = RingElem(tag, 1)
    units = [one, -one, eta, -eta, eta * eta, eta * eta * eta]
    for _ in range(300):
        x = rnd_elem(rng, tag, 20)
        if x.is_zero():
            continue
        c = x.canonical_associate()
        assert c.norm_abs() == x.norm_abs()
        assert c.is_totally_positive()
        assert c.canonical_associate() == c
        # associates all map to the same representative
        for u in units:
            assert (x * u).canonical_associate() == c


def test_canonical_associate_fixes_units_and_integers():
    tau = FieldTag.ROOT_FIVE
    one = RingElem(tau, 1)
    assert RingElem(tau, 0, 1).canonical_associate() == one
    assert RingElem(tau, -1, -1).canonical_associate() == one
    assert RingElem(tau, -5).canonical_associate() == RingElem(tau, 5)
    rt2 = FieldTag.ROOT_TWO
    assert RingElem(rt2, 1, 1).canonical_associate() == RingElem(rt2, 1)
    assert RingElem(rt2, 3, 2).canonical_associate() == RingElem(rt2, 1)
    assert RingElem(FieldTag.RATIONAL, -4).canonical_associate() == RingElem(
        FieldTag.RATIONAL, 4
    )


def test_splitting_class_examples():
    assert splitting_class(5, FieldTag.ROOT_FIVE) is SplittingClass.RAMIFIED
    assert splitting_class(11, FieldTag.ROOT_FIVE) is SplittingClass.SPLIT
    assert splitting_class(2, FieldTag.ROOT_FIVE) is SplittingClass.INERT
    assert splitting_class(3, FieldTag.ROOT_FIVE) is SplittingClass.INERT
    assert splitting_class(19, FieldTag.ROOT_FIVE) is SplittingClass.SPLIT
    assert splitting_class(2, FieldTag.ROOT_TWO) is SplittingClass.RAMIFIED
    assert splitting_class(7, FieldTag.ROOT_TWO) is SplittingClass.SPLIT
    assert splitting_class(17, FieldTag.ROOT_TWO) is SplittingClass.SPLIT
    assert splitting_class(3, FieldTag.ROOT_TWO) is SplittingClass.INERT
    assert splitting_class(5, FieldTag.ROOT_TWO) is SplittingClass.INERT
    with pytest.raises(DomainError):
        splitting_class(6, FieldTag.ROOT_FIVE)


@pytest.mark.parametrize("tag", QUADRATIC_TAGS)
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41])
def test_primes_above_norms(tag, p):
    cls = splitting_class(p, tag)
    pis = primes_above(p, tag)
    if cls is SplittingClass.SPLIT:
        assert len(pis) == 2
        assert all(pi.norm_abs() == p for pi in pis)
        # the two primes are not associates
        assert pis[0].canonical_associate() != pis[1].canonical_associate()
    elif cls is SplittingClass.RAMIFIED:
        assert len(pis) == 1
        assert pis[0].norm_abs() == p
    else:
        assert len(pis) == 1
        assert pis[0] == RingElem(tag, p)
    for pi in pis:
        assert pi.divides(RingElem(tag, p))
        assert pi == pi.canonical_associate()


def test_factor_int():
    assert factor_int(12) == [(2, 2), (3, 1)]
    assert factor_int(1) == []
    assert factor_int(97) == [(97, 1)]
    assert factor_int(9991) == [(97, 1), (103, 1)]


def test_factor_examples():
    tau = FieldTag.ROOT_FIVE
    fac = factor(RingElem(tau, 11))
    assert len(fac) == 2
    assert {pi.norm_abs() for pi, _ in fac} == {11}
    assert fac.value() == RingElem(tau, 11)
    rt2 = FieldTag.ROOT_TWO
    fac2 = factor(RingElem(rt2, 2))
    assert len(fac2) == 1
    (pi, e), = fac2.primes
    assert e == 2 and pi.norm_abs() == 2
    assert fac2.value() == RingElem(rt2, 2)


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_factor_roundtrip(tag):
    rng = random.Random(606)
    for _ in range(250):
        x = rnd_elem(rng, tag, 30)
        if x.is_zero():
            continue
        fac = factor(x)
        assert fac.value() == x
        assert fac.unit.is_unit()
        for pi, e in fac:
            assert e >= 1
            assert pi == pi.canonical_associate()
            assert pi.norm_abs() > 1


def test_norm_class_reps_examples():
    tau = FieldTag.ROOT_FIVE
    assert norm_class_reps(FieldTag.RATIONAL, 6) == [RingElem(FieldTag.RATIONAL, 6)]
    r11 = norm_class_reps(tau, 11)
    assert len(r11) == 2  # split prime: two classes
    assert all(v.norm_signed() == 11 and v.is_totally_positive() for v in r11)
    assert norm_class_reps(tau, 3) == []
    assert len(norm_class_reps(tau, 5)) == 1
    rt2 = FieldTag.ROOT_TWO
    assert len(norm_class_reps(rt2, 2)) == 1
    assert norm_class_reps(rt2, 3) == []
    r7 = norm_class_reps(rt2, 7)
    assert len(r7) == 2
    assert all(v.norm_signed() == 7 for v in r7)


@pytest.mark.parametrize("tag", QUADRATIC_TAGS)
def test_norm_class_reps_are_canonical_and_complete(tag):
    # every totally positive element of norm m must be a unit multiple of
    # exactly one listed representative
    rng = random.Random(707)
    for _ in range(300):
        x = rnd_elem(rng, tag, 15)
        m = x.norm_signed()
        if m <= 0:
            continue
        reps = norm_class_reps(tag, m)
        assert x.canonical_associate() in reps


def test_parse_and_format_roundtrip():
    rng = random.Random(808)
    for tag in ALL_TAGS:
        for _ in range(300):
            a = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
            b = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
            if tag.degree == 1:
                b = Fraction(0)
            x = FieldElem(tag, a, b)
            assert parse_field_elem(str(x), tag) == x


def test_parse_examples():
    tau = FieldTag.ROOT_FIVE
    assert parse_field_elem("3+w", tau) == FieldElem(tau, 3, 1)
    assert parse_field_elem("1/2 - 3/2*w", tau) == FieldElem(tau, Fraction(1, 2), Fraction(-3, 2))
    assert parse_ring_elem("-2+0*w", tau) == RingElem(tau, -2)
    assert parse_field_elem("7", FieldTag.RATIONAL) == FieldElem(FieldTag.RATIONAL, 7)
    with pytest.raises(ParseInputError):
        parse_field_elem("1+w", FieldTag.RATIONAL)
    with pytest.raises(ParseInputError):
        parse_ring_elem("1/2", tau)
    with pytest.raises(ParseInputError):
        parse_field_elem("", tau)
    with pytest.raises(ParseInputError):
        parse_field_elem("1+*w", tau)


def test_field_elem_division():
    rng = random.Random(909)
    for tag in ALL_TAGS:
        for _ in range(300):
            x = rnd_elem(rng, tag, 12).to_field()
            y = rnd_elem(rng, tag, 12).to_field()
            if y.is_zero():
                continue
            q = x / y
            assert q * y == x
    tau = FieldTag.ROOT_FIVE
    t = FieldElem.omega(tau)
    assert t.inverse() == t - 1  # 1/tau = tau - 1


def test_exact_div():
    tau = FieldTag.ROOT_FIVE
    x = RingElem(tau, 3, 1) * RingElem(tau, 2, 5)
    assert x.exact_div(RingElem(tau, 3, 1)) == RingElem(tau, 2, 5)
    assert RingElem(tau, 7).exact_div(RingElem(tau, 2)) is None

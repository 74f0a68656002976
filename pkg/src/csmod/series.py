"""Exact Dirichlet-series machinery for the coincidence counting
functions.

Everything is organized around one coefficient convention: a series is
stored as the tuple (f(1), ..., f(M)), and per-prime Euler factors are
rational functions in x whose expansion lists f(1), f(p), f(p^2), ...
The counting functions for the three module families are the cases
"cub", "ico" and "oct".  The supporting ideal-counting series of the
quaternion orders are available under "zetaK-<field>", "zetaO-<field>"
and "zetaOO-<field>", indexed by the module index of an ideal; the
"-half" variants reindex by the norm of the reduced norm instead, which
is the grid the counting functions live on.  Fields are named by the
FieldTag values: rational, root5, root2.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ResourceCapError
from .rings import FieldTag, SplittingClass, splitting_class

DEFAULT_SERIES_CAP = 1_000_000

PHI_CASES = ("cub", "ico", "oct")

_PHI_TAG = {
    "cub": FieldTag.RATIONAL,
    "ico": FieldTag.ROOT_FIVE,
    "oct": FieldTag.ROOT_TWO,
}

_TAG_BY_VALUE = {tag.value: tag for tag in FieldTag}

_ZETA_KINDS = ("zetaK", "zetaO", "zetaOO", "zetaO-half", "zetaOO-half")


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return tuple(out)


def _stretch(poly):
    """Substitute x -> x^2, turning a reduced-norm grid into a
    module-index grid."""
    out = [0] * (2 * len(poly) - 1)
    for i, c in enumerate(poly):
        out[2 * i] = c
    return tuple(out)


@dataclass(frozen=True)
class EulerFactor:
    """Local factor at one rational prime, as numerator/denominator
    polynomials in x with integer coefficients and constant term 1."""

    p: int
    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        if self.p < 2:
            raise DomainError("Euler factors sit at primes")
        if not self.numerator or self.numerator[0] != 1:
            raise DomainError("numerator must have constant term 1")
        if not self.denominator or self.denominator[0] != 1:
            raise DomainError("denominator must have constant term 1")

    def expansion(self, terms: int) -> tuple:
        """First terms of the power series, f(1), f(p), f(p^2), ..."""
        num, den = self.numerator, self.denominator
        out = []
        for n in range(terms):
            c = num[n] if n < len(num) else 0
            for k in range(1, min(n, len(den) - 1) + 1):
                c -= den[k] * out[n - k]
            assert c >= 0, "series coefficients must stay nonnegative"
            out.append(c)
        return tuple(out)


def _phi_polys(tag: FieldTag, p: int, cls: SplittingClass):
    if tag is FieldTag.RATIONAL:
        if p == 2:
            return (1,), (1,)
        return (1, 1), (1, -p)
    if cls is SplittingClass.RAMIFIED:
        return (1, 1), (1, -p)
    if cls is SplittingClass.SPLIT:
        return _poly_mul((1, 1), (1, 1)), _poly_mul((1, -p), (1, -p))
    return (1, 0, 1), (1, 0, -p * p)


def _zeta_polys(kind: str, tag: FieldTag, p: int, cls: SplittingClass):
    if kind == "zetaK":
        if tag is FieldTag.RATIONAL or cls is SplittingClass.RAMIFIED:
            return (1,), (1, -1)
        if cls is SplittingClass.SPLIT:
            return (1,), _poly_mul((1, -1), (1, -1))
        return (1,), (1, 0, -1)
    if kind == "zetaO-half":
        if tag is FieldTag.RATIONAL:
            if p == 2:
                return (1,), (1, -1)
            return (1,), _poly_mul((1, -1), (1, -p))
        if cls is SplittingClass.RAMIFIED:
            return (1,), _poly_mul((1, -1), (1, -p))
        if cls is SplittingClass.SPLIT:
            sq = _poly_mul((1, -1), (1, -1))
            return (1,), _poly_mul(sq, _poly_mul((1, -p), (1, -p)))
        return (1,), _poly_mul((1, 0, -1), (1, 0, -p * p))
    if kind == "zetaOO-half":
        if tag is FieldTag.RATIONAL:
            if p == 2:
                return (1,), (1, -1)
            return (1,), (1, 0, -1)
        if cls is SplittingClass.RAMIFIED:
            return (1,), (1, 0, -1)
        if cls is SplittingClass.SPLIT:
            return (1,), _poly_mul((1, 0, -1), (1, 0, -1))
        return (1,), (1, 0, 0, 0, -1)
    # the module-index versions are the half versions on the square grid
    num, den = _zeta_polys(kind + "-half", tag, p, cls)
    return _stretch(num), _stretch(den)


def _case_polys(case: str, p: int):
    tag = _PHI_TAG.get(case)
    if tag is not None:
        return _phi_polys(tag, p, splitting_class(p, tag))
    # zeta case names look like zetaO-root5 or zetaO-half-root5
    kind, _, field = case.rpartition("-")
    tag = _TAG_BY_VALUE.get(field)
    if tag is None or kind not in _ZETA_KINDS:
        known = PHI_CASES + tuple(
            f"{k}-{t}" for k in _ZETA_KINDS for t in _TAG_BY_VALUE)
        raise DomainError(f"unknown series case {case!r}; one of {known}")
    return _zeta_polys(kind, tag, p, splitting_class(p, tag))


def euler_factor(case: str, p: int) -> EulerFactor:
    """Local factor of the named series at the rational prime p."""
    num, den = _case_polys(case, p)
    return EulerFactor(p=p, numerator=num, denominator=den)


@dataclass(frozen=True)
class CoeffSeries:
    """Initial coefficients f(1..M) of a multiplicative series."""

    label: str
    values: tuple

    def __post_init__(self):
        if not self.values or self.values[0] != 1:
            raise DomainError("coefficient series start with f(1) = 1")

    def __len__(self) -> int:
        return len(self.values)

    def at(self, m: int) -> int:
        if not 1 <= m <= len(self.values):
            raise DomainError(f"coefficient f({m}) was not computed")
        return self.values[m - 1]


def _spf_sieve(limit: int):
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def _check_cap(value: int, cap) -> None:
    limit = DEFAULT_SERIES_CAP if cap is None else cap
    if value > limit:
        raise ResourceCapError(
            f"series length {value} exceeds the cap {limit}")


def coefficient_table(case: str, M: int, cap=None) -> CoeffSeries:
    """f(1..M) of the named series, assembled prime by prime."""
    if M < 1:
        raise DomainError("need at least one coefficient")
    _check_cap(M, cap)
    _case_polys(case, 2)
    values = [0] * (M + 1)
    values[1] = 1
    spf = _spf_sieve(M)
    expansions = {}
    for m in range(2, M + 1):
        p = spf[m]
        rest, r = m, 0
        while rest % p == 0:
            rest //= p
            r += 1
        exp = expansions.get(p)
        if exp is None:
            terms = 2
            while p ** terms <= M:
                terms += 1
            exp = euler_factor(case, p).expansion(terms)
            expansions[p] = exp
        values[m] = exp[r] * values[rest]
    return CoeffSeries(label=case, values=tuple(values[1:]))


def phi_coefficients(case: str, M: int, cap=None) -> CoeffSeries:
    """Counting coefficients of one of the three module families."""
    if case not in PHI_CASES:
        raise DomainError(f"case must be one of {PHI_CASES}")
    return coefficient_table(case, M, cap)


def dirichlet_convolve(a, b) -> tuple:
    """(a * b)(n) = sum over d | n of a(d) b(n/d), up to a common M."""
    if len(a) != len(b):
        raise DomainError("convolution needs equal-length tables")
    n = len(a)
    out = [0] * n
    for d in range(1, n + 1):
        ad = a[d - 1]
        if not ad:
            continue
        for q in range(1, n // d + 1):
            out[d * q - 1] += ad * b[q - 1]
    return tuple(out)


def summatory(case: str, x: int, cap=None):
    """(F(x), F(x) / (x^2 / 2)) with F the partial sum of the counting
    coefficients; the ratio tracks the linear average growth."""
    series = phi_coefficients(case, x, cap)
    total = sum(series.values)
    return total, Fraction(2 * total, x * x)


def residue_rho(case: str) -> float:
    """Asymptotic density constant: F(x) is asymptotic to rho x^2/2."""
    if case == "cub":
        return 6.0 / math.pi ** 2
    if case == "ico":
        golden = (1.0 + math.sqrt(5.0)) / 2.0
        return 45.0 * math.sqrt(5.0) * math.log(golden) / math.pi ** 4
    if case == "oct":
        return (720.0 * math.sqrt(2.0) * math.log(1.0 + math.sqrt(2.0))
                / (11.0 * math.pi ** 4))
    raise DomainError(f"case must be one of {PHI_CASES}")


def zeta_identity_check(case: str, M: int, cap=None) -> bool:
    """Confirm, coefficient by coefficient up to M, that the order zeta
    series factors as the reduced series times the two-sided series,
    and for cub that the counting function is their half-grid quotient."""
    if case not in PHI_CASES:
        raise DomainError(f"case must be one of {PHI_CASES}")
    field = _PHI_TAG[case].value
    phi = phi_coefficients(case, M, cap).values
    z_order = coefficient_table(f"zetaO-{field}", M, cap).values
    z_two_sided = coefficient_table(f"zetaOO-{field}", M, cap).values
    reduced = [0] * M
    m = 1
    while m * m <= M:
        reduced[m * m - 1] = phi[m - 1]
        m += 1
    if dirichlet_convolve(tuple(reduced), z_two_sided) != z_order:
        return False
    if case == "cub":
        half_order = coefficient_table("zetaO-half-rational", M, cap).values
        half_two = coefficient_table("zetaOO-half-rational", M, cap).values
        if dirichlet_convolve(phi, half_two) != half_order:
            return False
    return True

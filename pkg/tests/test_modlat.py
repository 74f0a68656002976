import random
from fractions import Fraction

import pytest

from csmod.errors import DomainError
from csmod.modlat import (
    Ambient,
    KIndex,
    OModule,
    hnf_canonical,
    identity_module,
    im_project,
    index_K,
    intersect,
    module_sum,
    scalar_intersect,
    scale_module,
)
from csmod.quat import Quat, cayley_matrix
from csmod.rings import FieldElem, FieldTag, RingElem, parse_field_elem

TAGS = [FieldTag.RATIONAL, FieldTag.ROOT_FIVE, FieldTag.ROOT_TWO]

# ---------------------------------------------------------------------------
# Independent coset-counting oracle.  Everything below works on plain integer
# column lattices: quadratic coordinates a+b*w are flattened to integer pairs
# (rank doubling), and the index of a sublattice is found by BFS over the
# quotient group using floor-division reduction.  No code is shared with the
# package's determinant-based index.

OMEGA_SQ = {FieldTag.ROOT_FIVE: (1, 1), FieldTag.ROOT_TWO: (2, 0)}


def z_hnf(cols, n):
    work = [list(c) for c in cols]
    piv = {}
    for r in range(n - 1, -1, -1):
        while True:
            nz = [c for c in work if c[r] != 0]
            if not nz:
                raise ValueError("rank deficient")
            if len(nz) == 1:
                break
            nz.sort(key=lambda c: abs(c[r]))
            p = nz[0]
            for c in nz[1:]:
                q = c[r] // p[r]
                if q:
                    for i in range(n):
                        c[i] -= q * p[i]
        p = nz[0]
        if p[r] < 0:
            for i in range(n):
                p[i] = -p[i]
        piv[r] = p
        work.remove(p)
    return [piv[r] for r in range(n)]


def z_reduce(vec, hnf_cols):
    v = list(vec)
    for r in range(len(v) - 1, -1, -1):
        q = v[r] // hnf_cols[r][r]
        if q:
            for i in range(r + 1):
                v[i] -= q * hnf_cols[r][i]
    return tuple(v)


def bfs_coset_count(super_cols, sub_cols, n, cap=20000):
    sub = z_hnf(sub_cols, n)
    start = z_reduce([0] * n, sub)
    seen = {start}
    frontier = [start]
    gens = [tuple(c) for c in super_cols]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = z_reduce([a + b for a, b in zip(cur, g)], sub)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise ValueError("coset cap exceeded")
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen)


def flatten_pair(msuper, msub):
    """Common-scale integer flattening of two modules over the same ring."""
    tag = msuper.tag
    scale = 1
    for col in msuper.basis + msub.basis:
        for e in col:
            scale = scale * e.denominator_lcm() // __import__("math").gcd(
                scale, e.denominator_lcm()
            )

    def flat_cols(module):
        out = []
        for col in module.basis:
            pairs = [((e * scale).a, (e * scale).b) for e in col]
            assert all(a.denominator == 1 and b.denominator == 1
                       for a, b in pairs)
            ints = [(int(a), int(b)) for a, b in pairs]
            if tag.degree == 1:
                out.append([a for a, _ in ints])
            else:
                c, d = OMEGA_SQ[tag]
                out.append([x for a, b in ints for x in (a, b)])
                out.append([x for a, b in ints for x in (b * c, a + b * d)])
        return out

    return flat_cols(msuper), flat_cols(msub), msuper.rank * tag.degree


def oracle_index(msuper, msub, cap=20000):
    sup, sub, n = flatten_pair(msuper, msub)
    return bfs_coset_count(sup, sub, n, cap)


# ---------------------------------------------------------------------------
# helpers

def rnd_module(rng, tag, ambient, span=3):
    n = ambient.dim
    while True:
        gens = []
        for _ in range(n):
            if tag.degree == 1:
                gens.append([rng.randint(-span, span) for _ in range(n)])
            else:
                gens.append([
                    FieldElem(tag, rng.randint(-span, span),
                              rng.randint(-1, 1))
                    for _ in range(n)
                ])
        try:
            return hnf_canonical(tag, ambient, gens)
        except DomainError:
            continue


def units(tag):
    if tag is FieldTag.RATIONAL:
        return [RingElem(tag, 1), RingElem(tag, -1)]
    eta = RingElem(tag, 1, 1) if tag is FieldTag.ROOT_TWO else RingElem(tag, 0, 1)
    eta_inv = RingElem(tag, -1, 1)
    assert eta * eta_inv == 1
    out = []
    for u in (RingElem(tag, 1), eta, eta * eta, eta_inv, eta_inv * eta_inv):
        out += [u, -u]
    return out


def lipschitz_module():
    return identity_module(FieldTag.RATIONAL, Ambient.QUAT)


def hurwitz_module():
    half = Fraction(1, 2)
    return hnf_canonical(FieldTag.RATIONAL, Ambient.QUAT, [
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (half, half, half, half),
    ])


def right_ideal(q, module):
    """Module of left multiples q*x for x running over the given module."""
    gens = []
    for col in module.basis:
        prod = q * Quat(module.tag, *col)
        gens.append(prod.coords())
    return hnf_canonical(module.tag, module.ambient, gens)


# ---------------------------------------------------------------------------
# canonical HNF

def test_hnf_scaled_bcc_display():
    mod = hnf_canonical(FieldTag.RATIONAL, Ambient.IM,
                        [(2, 0, 0), (0, 2, 0), (1, 1, 1)])
    want = tuple(
        tuple(FieldElem(FieldTag.RATIONAL, v) for v in col)
        for col in ((2, 0, 0), (0, 2, 0), (1, 1, 1))
    )
    assert mod.basis == want


def test_hnf_bcc_display():
    half = Fraction(1, 2)
    mod = hnf_canonical(FieldTag.RATIONAL, Ambient.IM, [
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (half, half, half),
    ])
    want = tuple(
        tuple(FieldElem(FieldTag.RATIONAL, v) for v in col)
        for col in ((1, 0, 0), (0, 1, 0), (half, half, half))
    )
    assert mod.basis == want


def test_hnf_scalar_diag():
    mod = hnf_canonical(FieldTag.ROOT_TWO, Ambient.IM,
                        [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert mod == scale_module(identity_module(FieldTag.ROOT_TWO, Ambient.IM), 2)
    assert [str(e) for e in mod.pivots()] == ["2", "2", "2"]


@pytest.mark.parametrize("tag", TAGS)
def test_hnf_canonical_under_regeneration(tag):
    rng = random.Random(101)
    for _ in range(60):
        mod = rnd_module(rng, tag, Ambient.IM)
        gens = [list(col) for col in mod.basis]
        rng.shuffle(gens)
        u = rng.choice(units(tag))
        gens[0] = [e * u.to_field() for e in gens[0]]
        lam = RingElem(tag, rng.randint(-2, 2)) if tag.degree == 1 else \
            RingElem(tag, rng.randint(-2, 2), rng.randint(-1, 1))
        gens.append([
            a + lam.to_field() * b for a, b in zip(gens[1], gens[2])
        ])
        assert hnf_canonical(tag, Ambient.IM, gens) == mod


def test_hnf_rank_deficient_raises():
    with pytest.raises(DomainError):
        hnf_canonical(FieldTag.RATIONAL, Ambient.IM,
                      [(1, 2, 0), (2, 4, 0), (3, 6, 0)])


def test_coordinates_roundtrip():
    rng = random.Random(103)
    for tag in TAGS:
        for _ in range(40):
            mod = rnd_module(rng, tag, Ambient.IM)
            lam = []
            for _ in range(3):
                if tag.degree == 1:
                    lam.append(RingElem(tag, rng.randint(-3, 3)))
                else:
                    lam.append(RingElem(tag, rng.randint(-3, 3),
                                        rng.randint(-1, 1)))
            vec = [FieldElem(tag, 0)] * 3
            for c, l in enumerate(lam):
                for r in range(3):
                    vec[r] = vec[r] + l.to_field() * mod.basis[c][r]
            assert mod.coordinates(vec) == tuple(lam)
            assert mod.contains(vec)


# ---------------------------------------------------------------------------
# intersection and sum

def test_intersect_self_is_identity_law():
    rng = random.Random(107)
    for tag in TAGS:
        for _ in range(20):
            mod = rnd_module(rng, tag, Ambient.IM)
            assert intersect(mod, mod) == mod


def test_intersect_with_rotated_cube_lattice():
    tag = FieldTag.RATIONAL
    cube = identity_module(tag, Ambient.IM)
    rot = cayley_matrix(Quat(tag, 2, 1, 0, 0))
    cols = [[rot.rows[r][c] for r in range(3)] for c in range(3)]
    rotated = hnf_canonical(tag, Ambient.IM, cols)
    both = intersect(cube, rotated)
    assert cube.contains_module(both)
    assert rotated.contains_module(both)
    assert index_K(cube, both).absolute == 5
    assert oracle_index(cube, both) == 5
    # the intersection is exactly {(x, y, z) integer with y = 2z mod 5}
    assert both.contains((0, 2, 1))
    assert both.contains((1, 0, 0))
    assert not both.contains((0, 1, 1))


def test_intersect_is_commutative_and_lower_bound():
    rng = random.Random(109)
    for tag in TAGS:
        for _ in range(15):
            a = rnd_module(rng, tag, Ambient.IM)
            b = rnd_module(rng, tag, Ambient.IM)
            both = intersect(a, b)
            assert both == intersect(b, a)
            assert a.contains_module(both)
            assert b.contains_module(both)
            total = module_sum(a, b)
            assert total.contains_module(a)
            assert total.contains_module(b)


def test_module_sum_examples():
    rng = random.Random(113)
    for tag in TAGS:
        mod = rnd_module(rng, tag, Ambient.IM)
        assert module_sum(mod, mod) == mod
    ident = identity_module(FieldTag.RATIONAL, Ambient.IM)
    assert module_sum(scale_module(ident, 2), scale_module(ident, 3)) == ident


def test_ambient_and_tag_mismatches():
    im = identity_module(FieldTag.RATIONAL, Ambient.IM)
    quat = identity_module(FieldTag.RATIONAL, Ambient.QUAT)
    other = identity_module(FieldTag.ROOT_FIVE, Ambient.IM)
    with pytest.raises(DomainError):
        intersect(im, quat)
    with pytest.raises(DomainError):
        module_sum(im, other)


def test_scalars_plus_ideal_of_even_norm_generator():
    # q = 1+i is two-sided but has even norm, so adding the scalars to
    # q*H (H the half-integer order) gives only the integer-coordinate
    # order, strictly smaller than H = H cap q*H*q^-1.
    tag = FieldTag.RATIONAL
    hur = hurwitz_module()
    lip = lipschitz_module()
    q = Quat(tag, 1, 1, 0, 0)
    ideal = right_ideal(q, hur)
    summed = hnf_canonical(tag, Ambient.QUAT,
                           [(1, 0, 0, 0)] + list(ideal.basis))
    assert summed == lip
    assert summed != hur
    conj_gens = [
        (q * Quat(tag, *col) * q.inverse()).coords() for col in hur.basis
    ]
    assert hnf_canonical(tag, Ambient.QUAT, conj_gens) == hur
    assert intersect(hur, hur) == hur


def test_scalars_plus_ideal_of_odd_norm_generator():
    # for odd-norm primitive q the sum of the scalars and q*H does fill
    # the whole intersection H cap q*H*q^-1
    tag = FieldTag.RATIONAL
    hur = hurwitz_module()
    for coords in ((1, 1, 1, 0), (2, 1, 0, 0), (0, 1, 1, 1),
                   (2, 1, 1, 1), (3, 1, 1, 0)):
        q = Quat(tag, *coords)
        ideal = right_ideal(q, hur)
        summed = hnf_canonical(tag, Ambient.QUAT,
                               [(1, 0, 0, 0)] + list(ideal.basis))
        conj = hnf_canonical(tag, Ambient.QUAT, [
            (q * Quat(tag, *col) * q.inverse()).coords() for col in hur.basis
        ])
        assert summed == intersect(hur, conj)


# ---------------------------------------------------------------------------
# indices

def test_index_hurwitz_examples():
    hur = hurwitz_module()
    lip = lipschitz_module()
    assert index_K(hur, lip).absolute == 2
    q = Quat(FieldTag.RATIONAL, 1, 1, 0, 0)
    ideal = right_ideal(q, hur)
    idx = index_K(hur, ideal)
    assert idx.absolute == 4
    assert oracle_index(hur, ideal) == 4


def test_index_not_submodule_raises():
    ident = identity_module(FieldTag.RATIONAL, Ambient.IM)
    with pytest.raises(DomainError):
        index_K(scale_module(ident, 2), ident)


def test_index_trivial_iff_equal():
    rng = random.Random(127)
    for tag in TAGS:
        mod = rnd_module(rng, tag, Ambient.IM)
        assert index_K(mod, mod).is_trivial()
        sub = scale_module(mod, 2)
        assert not index_K(mod, sub).is_trivial()


def test_index_agrees_with_coset_oracle():
    rng = random.Random(131)
    for tag in TAGS:
        for _ in range(12):
            mod = rnd_module(rng, tag, Ambient.IM, span=2)
            d = rng.choice((2, 3)) if tag.degree == 1 else 2
            gens = [[e * d for e in col] for col in mod.basis]
            lam = (RingElem(tag, 1) if tag.degree == 1
                   else RingElem(tag, rng.randint(0, 1), 1))
            gens.append([
                a + lam.to_field() * b
                for a, b in zip(mod.basis[0], mod.basis[1])
            ])
            sub = hnf_canonical(tag, Ambient.IM, gens)
            assert mod.contains_module(sub)
            assert index_K(mod, sub).absolute == oracle_index(mod, sub)


def test_index_multiplicative_along_chains():
    rng = random.Random(137)
    for tag in TAGS:
        for _ in range(15):
            top = rnd_module(rng, tag, Ambient.IM, span=2)
            mid = scale_module(top, 2)
            if tag.degree == 1:
                bot = scale_module(mid, 3)
            else:
                bot = scale_module(mid, FieldElem(tag, 1, 1))
            total = index_K(top, bot)
            step = index_K(top, mid) * index_K(mid, bot)
            assert total == step


# ---------------------------------------------------------------------------
# projections to the imaginary ambient

def test_im_project_hurwitz_is_bcc():
    half = Fraction(1, 2)
    got = im_project(hurwitz_module())
    want = tuple(
        tuple(FieldElem(FieldTag.RATIONAL, v) for v in col)
        for col in ((1, 0, 0), (0, 1, 0), (half, half, half))
    )
    assert got.basis == want


def test_im_project_integer_order_is_cubic():
    assert im_project(lipschitz_module()) == identity_module(
        FieldTag.RATIONAL, Ambient.IM
    )


def test_im_project_requires_rank_four():
    with pytest.raises(DomainError):
        im_project(identity_module(FieldTag.RATIONAL, Ambient.IM))


def test_scalar_intersect_examples():
    tag = FieldTag.RATIONAL
    hur = hurwitz_module()
    assert scalar_intersect(hur) == RingElem(tag, 1)
    ideal5 = right_ideal(Quat(tag, 2, 1, 0, 0), hur)
    assert scalar_intersect(ideal5) == RingElem(tag, 5)
    for t in range(1, 5):
        assert not ideal5.contains((t, 0, 0, 0))
    assert ideal5.contains((5, 0, 0, 0))
    ideal2 = right_ideal(Quat(tag, 1, 1, 0, 0), hur)
    assert scalar_intersect(ideal2) == RingElem(tag, 2)
    assert ideal2.contains((2, 0, 0, 0))
    assert not ideal2.contains((1, 0, 0, 0))


def test_json_columns_roundtrip():
    rng = random.Random(139)
    for tag in TAGS:
        mod = rnd_module(rng, tag, Ambient.IM)
        rebuilt = hnf_canonical(tag, Ambient.IM, [
            [parse_field_elem(s, tag) for s in col]
            for col in mod.json_columns()
        ])
        assert rebuilt == mod

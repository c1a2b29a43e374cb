import random
from fractions import Fraction

import pytest

from weylconvex.construction import find_convex_representative
from weylconvex.convexity import analyze, is_quasi_convex
from weylconvex.errors import InputError, NotInCellError
from weylconvex.matrixgroup import (
    build_cross_section,
    collision_search,
    enumerate_cell_points,
    identity_cell_point,
    lift,
    mat_key,
    matrix_context,
    minv,
    mmul,
    random_cell_point,
    random_section_point,
    sigma,
    transversality_check,
    underlying_permutation,
    unipotent_coordinates,
    unipotent_from_coords,
    xi,
)
from weylconvex.weyl import conjugacy_classes, from_one_line, from_word, identity_element


def ctx_of(n, field="rational"):
    return matrix_context(n, field)


def convex_reps(n):
    rs = matrix_context(n, 2).rs
    return [find_convex_representative(c).representative for c in conjugacy_classes(rs)]


def test_lift_identity_and_s1():
    ctx = ctx_of(2)
    ident = identity_element(ctx.rs)
    assert lift(ctx, ident) == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    s1 = from_word(ctx.rs, None, [0])
    assert lift(ctx, s1) == ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))


def test_lift_matches_root_action():
    ctx = ctx_of(5)
    x = from_word(ctx.rs, None, [1, 2, 3, 0, 1, 2])
    pi = underlying_permutation(x)
    for i in range(ctx.rs.count):
        a, b = ctx.pos_of_root[i]
        assert ctx.pos_of_root[x.perm[i]] == (pi[a], pi[b])


def test_lift_conjugates_root_subgroups():
    ctx = ctx_of(4, 101)
    x = from_word(ctx.rs, None, [0, 2, 1])
    P = lift(ctx, x)
    Pinv = minv(ctx.field, P)
    pi = underlying_permutation(x)
    t = ctx.field.of(37)
    for i in range(ctx.rs.count):
        a, b = ctx.pos_of_root[i]
        got = mmul(mmul(P, ctx.u((a, b), t)), Pinv)
        assert got == ctx.u((pi[a], pi[b]), t)


def test_chevalley_relations():
    # u(s)u(t) = u(s+t) on one root; [u_ij(s), u_jk(t)] = u_ik(st).
    for p in (101, 2):
        for n in range(3, 7):
            ctx = ctx_of(n, p)
            f = ctx.field
            rng = random.Random(5 * n + p)
            for _ in range(10):
                i, j, k = rng.sample(range(n), 3)
                s, t = f.random(rng), f.random(rng)
                assert mmul(ctx.u((i, j), s), ctx.u((i, j), t)) == ctx.u((i, j), s + t)
                a = ctx.u((i, j), s)
                b = ctx.u((j, k), t)
                comm = mmul(
                    mmul(a, b), mmul(minv(f, a), minv(f, b))
                )
                assert comm == ctx.u((i, k), s * t)


def test_unipotent_coordinates_readoff():
    ctx = ctx_of(3)
    f = ctx.field
    v = mmul(ctx.u((0, 1), f.of(4)), ctx.u((0, 2), f.of(7)))
    coords = unipotent_coordinates(ctx, v, [(0, 1), (0, 2)])
    assert coords == [f.of(4), f.of(7)]
    ident = tuple(tuple(f.one if i == j else f.zero for j in range(3)) for i in range(3))
    assert unipotent_coordinates(ctx, ident, [(0, 1), (0, 2), (1, 2)]) == [f.zero] * 3


def test_unipotent_coordinates_reorder_with_commutator():
    # u12(a) u23(c) rewritten in the order (u23, u12, u13) picks up a
    # commutator correction at u13; direct matrix expansion fixes its value
    # as +ac: u12(a) u23(c) = u23(c) u12(a) u13(ac).
    ctx = ctx_of(3)
    f = ctx.field
    a, c = f.of(3), f.of(5)
    v = mmul(ctx.u((0, 1), a), ctx.u((1, 2), c))
    expanded = mmul(mmul(ctx.u((1, 2), c), ctx.u((0, 1), a)), ctx.u((0, 2), a * c))
    assert expanded == v
    coords = unipotent_coordinates(ctx, v, [(1, 2), (0, 1), (0, 2)])
    assert coords == [c, a, a * c]
    back = unipotent_from_coords(ctx, [(1, 2), (0, 1), (0, 2)], coords)
    assert back == v


def test_unipotent_coordinates_rejects_outside_support():
    ctx = ctx_of(3)
    f = ctx.field
    v = ctx.u((0, 2), f.of(1))
    with pytest.raises(NotInCellError):
        unipotent_coordinates(ctx, v, [(0, 1)])


def test_xi_identity_point_returns_z():
    ctx = ctx_of(4, 101)
    x = from_word(ctx.rs, None, [1, 2, 0])
    data = build_cross_section(ctx, x)
    p = identity_cell_point(data)
    assert xi(data, p) == data.lift_mat


def test_sigma_on_lift_gives_identity_point():
    ctx = ctx_of(4, 101)
    for rep in convex_reps(4):
        x = from_word(ctx.rs, None, list(rep.word()))
        data = build_cross_section(ctx, x)
        p = sigma(data, data.lift_mat)
        assert p == identity_cell_point(data)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_roundtrips_over_f101(n):
    ctx = ctx_of(n, 101)
    rng = random.Random(42)
    for rep in convex_reps(n):
        x = from_word(ctx.rs, None, list(rep.word()))
        data = build_cross_section(ctx, x)
        for _ in range(40):
            p = random_cell_point(data, rng)
            g = xi(data, p)
            q = sigma(data, g)
            assert q == p
            assert xi(data, q) == g


def test_roundtrips_over_rationals():
    ctx = ctx_of(4, "rational")
    rng = random.Random(7)
    for rep in convex_reps(4):
        x = from_word(ctx.rs, None, list(rep.word()))
        data = build_cross_section(ctx, x)
        for _ in range(5):
            p = random_cell_point(data, rng)
            assert sigma(data, xi(data, p)) == p


def test_sigma_rejects_non_quasi_convex():
    ctx = ctx_of(3, 101)
    s1 = from_word(ctx.rs, None, [0])
    data = build_cross_section(ctx, s1)
    with pytest.raises(InputError):
        sigma(data, data.lift_mat)


def test_sigma_not_in_cell_reports():
    # A generic diagonal matrix is not in the cell of a Coxeter element.
    ctx = ctx_of(3, 101)
    x = from_word(ctx.rs, None, [0, 1])
    data = build_cross_section(ctx, x)
    f = ctx.field
    g = ctx.diag([f.of(1), f.of(2), f.of(3)])
    with pytest.raises(NotInCellError):
        sigma(data, g)


def test_exhaustive_injectivity_f2_sl3():
    ctx = ctx_of(3, 2)
    for rep in convex_reps(3):
        x = from_word(ctx.rs, None, list(rep.word()))
        data = build_cross_section(ctx, x)
        images = set()
        total = 0
        for p in enumerate_cell_points(data):
            total += 1
            images.add(mat_key(xi(data, p)))
        assert len(images) == total


def test_collision_search_negative_control():
    ctx = ctx_of(3, 2)
    x = from_word(ctx.rs, None, [0, 1])
    data = build_cross_section(ctx, x)
    assert collision_search(data, budget=10_000) is None


def test_collision_search_non_quasi_convex_s1():
    # s1 in GL_3 is not quasi-convex, yet exhausting the tiny F_2 and F_3
    # domains finds no collision: small-field injectivity can survive the
    # loss of quasi-convexity, so the search must report, never assume.
    for p in (2, 3):
        ctx = ctx_of(3, p)
        s1 = from_word(ctx.rs, None, [0])
        data = build_cross_section(ctx, s1)
        assert collision_search(data, budget=10**7) is None


def test_collision_exists_for_gl6_cycle_over_f2_budgeted():
    # The budgeted search over the 6-cycle with levels (1,2,3); a witness,
    # if found within budget, must be genuine.
    ctx = ctx_of(6, 2)
    x = from_one_line(ctx.rs, [6, 3, 1, 5, 2, 4])
    assert not is_quasi_convex(x)
    data = build_cross_section(ctx, x)
    found = collision_search(data, budget=3_000)
    if found is not None:
        p1, p2 = found
        assert p1 != p2
        assert xi(data, p1) == xi(data, p2)


def test_transversality_w0_gl2():
    ctx = ctx_of(2, "rational")
    w0 = from_word(ctx.rs, None, [0])
    data = build_cross_section(ctx, w0)
    rng = random.Random(3)
    for _ in range(5):
        g = random_section_point(data, rng)
        assert transversality_check(data, g)


def test_transversality_identity_degenerate():
    ctx = ctx_of(3, "rational")
    data = build_cross_section(ctx, identity_element(ctx.rs))
    rng = random.Random(4)
    g = random_section_point(data, rng)
    assert transversality_check(data, g)


def test_transversality_convex_battery_gl5():
    ctx = ctx_of(5, "rational")
    x = from_word(ctx.rs, None, [1, 2, 3, 0, 1, 2])
    assert analyze(x).convex
    data = build_cross_section(ctx, x)
    rng = random.Random(11)
    for _ in range(5):
        g = random_section_point(data, rng)
        assert transversality_check(data, g)


def test_transversality_requires_rationals():
    ctx = ctx_of(3, 101)
    x = from_word(ctx.rs, None, [0, 1])
    data = build_cross_section(ctx, x)
    rng = random.Random(1)
    with pytest.raises(InputError):
        transversality_check(data, random_section_point(data, rng))


def test_elliptic_min_length_dimension_bookkeeping():
    # With empty phi the domain unipotent is all of U.
    ctx = ctx_of(4, 101)
    x = from_word(ctx.rs, None, [0, 1, 2])
    data = build_cross_section(ctx, x)
    assert data.dims()["domain_unipotent"] == ctx.rs.positive_count


def test_lift_rejects_twisted():
    from weylconvex.roots import diagram_automorphisms

    ctx = ctx_of(3)
    flip = [a for a in diagram_automorphisms(ctx.rs) if not a.is_identity][0]
    x = from_word(ctx.rs, flip, [0], twist_power=1)
    with pytest.raises(InputError):
        lift(ctx, x)


def test_lift_commutes_with_levi():
    # lift * L_x = L_x * lift on generators: conjugating a Levi root
    # subgroup or a torus element stays inside the Levi data.
    ctx = ctx_of(4, 101)
    x = from_word(ctx.rs, None, [0, 1, 0])  # w0 of the A2 block inside GL4?
    data = build_cross_section(ctx, x)
    f = ctx.field
    pi = data.pi
    for (a, b) in data.phi_pos:
        img = (pi[a], pi[b])
        root = ctx.root_of_pos[img]
        assert root in [ctx.root_of_pos[p] for p in data.phi_pos + data.phi_neg]
    d = data.cycles
    diag = [f.of(3)] * ctx.n
    for cyc in d:
        val = f.of(7)
        for i in cyc:
            diag[i] = val
    D = ctx.diag(diag)
    assert mmul(mmul(data.lift_mat, D), data.lift_inv) == D


def test_roundtrip_pinned_length6_convex_gl5():
    # The convex length-6 element beyond good position, realized in 5x5
    # matrices: the section inverts the conjugation map on random points.
    ctx = ctx_of(5, 101)
    x = from_word(ctx.rs, None, [1, 2, 3, 0, 1, 2])
    assert analyze(x).convex
    data = build_cross_section(ctx, x)
    rng = random.Random(99)
    for _ in range(20):
        p = random_cell_point(data, rng)
        assert sigma(data, xi(data, p)) == p


def test_roundtrips_500_over_rationals_battery():
    # The full randomized volume over the rationals with small integers:
    # 500 seed-pinned roundtrips per convex representative in 3x3 to 5x5.
    for n in (3, 4, 5):
        ctx = ctx_of(n, "rational")
        for rep in convex_reps(n):
            x = from_word(ctx.rs, None, list(rep.word()))
            data = build_cross_section(ctx, x)
            rng = random.Random(1234)
            for _ in range(500):
                p = random_cell_point(data, rng)
                assert sigma(data, xi(data, p)) == p

from fractions import Fraction

import pytest

from weylconvex.construction import (
    elliptic_min_convex,
    find_convex_representative,
    find_good_position_conjugate,
)
from weylconvex.convexity import analyze, phi_of
from weylconvex.errors import InputError
from weylconvex.roots import CartanType, build_root_system, diagram_automorphisms
from weylconvex.weyl import (
    class_of,
    conjugacy_classes,
    fixed_roots,
    from_word,
    is_elliptic,
    min_length_set,
)

RS = {}


def rs_of(name):
    if name not in RS:
        RS[name] = build_root_system(CartanType.parse(name))
    return RS[name]


def test_identity_class():
    rs = rs_of("A2")
    classes = conjugacy_classes(rs)
    ident_cls = [c for c in classes if c.min_length == 0][0]
    res = find_convex_representative(ident_cls)
    assert res.representative.is_identity()
    assert res.report.convex


def test_a2_reflection_class_picks_w0():
    # The class {s1, s2, s1s2s1}: neither minimal-length member is convex,
    # the longest element is the unique convex representative.
    rs = rs_of("A2")
    classes = conjugacy_classes(rs)
    refl = [c for c in classes if c.min_length == 1][0]
    omin = min_length_set(refl)
    assert sorted(y.word() for y in omin) == [(0,), (1,)]
    assert all(not analyze(y).convex for y in omin)
    res = find_convex_representative(refl)
    assert res.representative.word() == (0, 1, 0)
    assert res.report.convex
    assert phi_of(res.representative) == fixed_roots(res.representative)


def test_c3_class_of_s3s2s3s1s2():
    rs = rs_of("C3")
    x = from_word(rs, None, [2, 1, 2, 0, 1])
    cls = class_of(x)
    assert not analyze(x).convex
    res = find_convex_representative(cls)
    y = res.representative
    assert analyze(y).convex
    assert any(z == y for z in cls.elements)
    # Independent oracle: exhaustive scan of the class finds a convex member
    # with phi = fixed roots, confirming what the construction returned.
    brute = [
        z
        for z in cls.elements
        if analyze(z).convex and phi_of(z) == fixed_roots(z)
    ]
    assert brute
    assert any(z == y for z in brute)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "G2"])
def test_every_class_has_verified_representative(name):
    rs = rs_of(name)
    for cls in conjugacy_classes(rs):
        res = find_convex_representative(cls)
        assert res.report.convex
        assert phi_of(res.representative) == fixed_roots(res.representative)
        assert any(z == res.representative for z in cls.elements)


def test_twisted_a3_classes_have_representatives():
    rs = rs_of("A3")
    flip = [a for a in diagram_automorphisms(rs) if not a.is_identity][0]
    for cls in conjugacy_classes(rs, flip, 1):
        res = find_convex_representative(cls)
        assert res.report.convex
        assert phi_of(res.representative) == fixed_roots(res.representative)


def test_geometric_path_used_somewhere():
    # The geometric induction should succeed on its own most of the time;
    # make sure it is not silently falling back everywhere.
    rs = rs_of("A3")
    methods = {find_convex_representative(c).method for c in conjugacy_classes(rs)}
    assert "geometric" in methods


def test_find_good_position_conjugate_a3():
    rs = rs_of("A3")
    x = from_word(rs, None, [0, 1, 2])  # Coxeter class contains s2s1s3
    y = find_good_position_conjugate(x, [Fraction(1, 2), Fraction(1)])
    assert y is not None
    from weylconvex.geometry import is_good_position

    assert is_good_position(y, [Fraction(1, 2), Fraction(1)]) is not None


def test_find_good_position_lengths_a4():
    rs = rs_of("A4")
    x = from_word(rs, None, [0, 1, 2, 3])
    y1 = find_good_position_conjugate(x, [Fraction(2, 5), Fraction(4, 5)])
    assert y1.length() == 4
    y2 = find_good_position_conjugate(x, [Fraction(4, 5), Fraction(2, 5)])
    assert y2.length() == 8


def test_find_good_position_budget():
    rs = rs_of("A4")
    x = from_word(rs, None, [0, 1, 2, 3])
    assert find_good_position_conjugate(x, [Fraction(2, 5), Fraction(4, 5)], budget=0) is None


def test_elliptic_min_convex_a2():
    rs = rs_of("A2")
    cox = class_of(from_word(rs, None, [0, 1]))
    y = elliptic_min_convex(cox)
    assert y.length() == 2
    assert analyze(y).convex
    assert y.word() in ((0, 1), (1, 0))


def test_elliptic_min_convex_c3():
    rs = rs_of("C3")
    x = from_word(rs, None, [2, 1, 2, 0, 1])
    cls = class_of(x)
    y = elliptic_min_convex(cls)
    assert y.length() == cls.min_length == 5
    assert analyze(y).convex
    assert y != x  # the given minimal-length element itself is not convex


def test_elliptic_min_convex_g2_coxeter():
    rs = rs_of("G2")
    cls = class_of(from_word(rs, None, [0, 1]))
    y = elliptic_min_convex(cls)
    assert analyze(y).convex
    assert y.length() == 2


def test_elliptic_min_convex_rejects_non_elliptic():
    rs = rs_of("A2")
    refl = class_of(from_word(rs, None, [0]))
    with pytest.raises(InputError):
        elliptic_min_convex(refl)


def test_elliptic_classes_battery():
    for name in ("A2", "A3", "B2", "B3", "G2", "C3"):
        rs = rs_of(name)
        for cls in conjugacy_classes(rs):
            if not is_elliptic(cls.representative):
                continue
            y = elliptic_min_convex(cls)
            assert y.length() == cls.min_length
            assert analyze(y).convex


def test_elliptic_min_convex_twisted_cosets():
    rs = rs_of("D4")
    from weylconvex.weyl import is_elliptic

    for delta in diagram_automorphisms(rs):
        if delta.is_identity:
            continue
        for cls in conjugacy_classes(rs, delta, 1):
            if not is_elliptic(cls.representative):
                continue
            y = elliptic_min_convex(cls)
            assert y.length() == cls.min_length
            assert analyze(y).convex


def test_geometric_and_exhaustive_agree_on_existence():
    # Wherever both run, the two methods find valid representatives.
    for name in ("A3", "B2"):
        rs = rs_of(name)
        for cls in conjugacy_classes(rs):
            geo = find_convex_representative(cls)
            assert geo.report.convex
            from weylconvex.weyl import fixed_roots

            brute = [
                z for z in cls.elements
                if analyze(z).convex and phi_of(z) == fixed_roots(z)
            ]
            assert brute, (name, cls.representative.word())


def test_e6_battery_within_default_budget():
    # The enumeration budget admits E6; every one of its 25 classes gets a
    # geometrically constructed, exactly verified representative.
    rs = rs_of("E6")
    classes = conjugacy_classes(rs)
    assert len(classes) == 25
    assert sum(len(c) for c in classes) == 51840
    from weylconvex.weyl import fixed_roots

    for cls in classes:
        res = find_convex_representative(cls)
        y = res.representative
        assert res.report.convex and phi_of(y) == fixed_roots(y)

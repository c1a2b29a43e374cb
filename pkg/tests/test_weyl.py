from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylconvex.errors import BudgetExceeded
from weylconvex.roots import CartanType, build_root_system, diagram_automorphisms
from weylconvex.weyl import (
    act,
    class_of,
    conjugacy_classes,
    cyclic_shift_class,
    cyclic_shift_reachable,
    enumerate_weyl_group,
    fixed_roots,
    from_one_line,
    from_word,
    identity_element,
    is_elliptic,
    longest_element,
    min_length_set,
)

RS = {}


def rs_of(name):
    if name not in RS:
        RS[name] = build_root_system(CartanType.parse(name))
    return RS[name]


def flip_of(name):
    autos = diagram_automorphisms(rs_of(name))
    return [a for a in autos if not a.is_identity][0]


# ---------------------------------------------------------------------------
# Independent oracle for type A: one-line permutation composition.


def one_line(word, n):
    """Compose adjacent transpositions by hand, rightmost first."""
    p = list(range(1, n + 1))
    for lab in reversed(word):
        p[lab], p[lab + 1] = p[lab + 1], p[lab]
        # p as images: applying s after current p means permuting positions...
    # Recompute properly: build function composition sigma_{i1} o ... o sigma_{iL}
    def apply(word, x):
        for lab in reversed(word):
            if x == lab + 1:
                x = lab + 2
            elif x == lab + 2:
                x = lab + 1
        return x

    return [apply(word, i) for i in range(1, n + 1)]


def test_one_line_oracle_matches_root_action():
    rs = rs_of("A3")
    word = [1, 0, 2]  # s2 s1 s3 in 1-based labels
    x = from_word(rs, None, word)
    p = one_line(word, 4)
    # Check x(e_i - e_j) = e_{p(i)} - e_{p(j)} on all roots.
    for idx in range(rs.count):
        v = rs.roots[idx]
        i = v.index(1)
        j = v.index(-1)
        img = [Fraction(0)] * 4
        img[p[i] - 1] = Fraction(1)
        img[p[j] - 1] = Fraction(-1)
        assert rs.roots[x.perm[idx]] == tuple(img)


def test_from_word_reduces_and_lengths():
    rs = rs_of("A2")
    w0 = from_word(rs, None, [0, 1, 0])
    assert w0.length() == 3
    assert w0.word() == (0, 1, 0)
    ident = from_word(rs, None, [])
    assert ident.is_identity()
    # s1 s1 cancels
    assert from_word(rs, None, [0, 0]).is_identity()


def test_from_word_a3_matches_composition():
    rs = rs_of("A3")
    x = from_word(rs, None, [1, 0, 2])
    s2 = from_word(rs, None, [1])
    s1 = from_word(rs, None, [0])
    s3 = from_word(rs, None, [2])
    assert x == s2.mul(s1).mul(s3)
    assert x.length() == 3


def test_act_a2():
    rs = rs_of("A2")
    a1, a2 = rs.simple_indices
    a12 = rs.sum_table[(a1, a2)]
    x = from_word(rs, None, [0, 1])  # s1 s2
    assert act(x, a1) == a2
    assert act(x, a12) == rs.neg(a1)
    ident = identity_element(rs)
    for i in range(rs.count):
        assert act(ident, i, 5) == i


def test_longest_element():
    for name, ln in (("A1", 1), ("A2", 3), ("B2", 4), ("G2", 6), ("A3", 6)):
        rs = rs_of(name)
        w0 = longest_element(rs)
        assert w0.length() == ln == rs.positive_count
        pc = rs.positive_count
        assert all(w0.root_perm[i] >= pc for i in range(pc))
    # w0 = -1 in B2: every root goes to its negative
    rs = rs_of("B2")
    w0 = longest_element(rs)
    assert all(w0.root_perm[i] == rs.neg(i) for i in range(rs.count))


def test_length_equals_word_length_exhaustive():
    for name in ("A3", "B3", "G2"):
        rs = rs_of(name)
        for perm in enumerate_weyl_group(rs):
            from weylconvex.weyl import WeylElement

            w = WeylElement(rs, perm)
            assert w.length() == len(w.word())


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=3), max_size=14))
def test_random_words_b4_length_consistency(word):
    rs = rs_of("B4")
    x = from_word(rs, None, word)
    assert x.length() == len(x.word())
    assert x.length() <= len(word)
    assert (x.length() - len(word)) % 2 == 0


def test_conjugacy_classes_a2():
    rs = rs_of("A2")
    classes = conjugacy_classes(rs)
    assert len(classes) == 3
    sizes = sorted(len(c) for c in classes)
    assert sizes == [1, 2, 3]
    assert sum(len(c) for c in classes) == 6


def test_conjugacy_classes_a3():
    classes = conjugacy_classes(rs_of("A3"))
    assert len(classes) == 5  # partitions of 4
    assert sum(len(c) for c in classes) == 24


def test_twisted_classes_a2():
    rs = rs_of("A2")
    delta = flip_of("A2")
    classes = conjugacy_classes(rs, delta, 1)
    assert sum(len(c) for c in classes) == 6
    assert len(classes) == 3
    # Independent oracle: orbit closure computed directly on (perm, k) pairs.
    from weylconvex.weyl import TwistedElement, WeylElement

    all_elems = {
        TwistedElement(rs, WeylElement(rs, p), delta, 1)
        for p in enumerate_weyl_group(rs)
    }
    seen = set()
    orbits = 0
    for e in sorted(all_elems, key=lambda t: t.key()):
        if e in seen:
            continue
        orbits += 1
        stack = [e]
        while stack:
            z = stack.pop()
            if z in seen:
                continue
            seen.add(z)
            for lab in range(rs.rank):
                stack.append(z.conj_by_simple(lab))
    assert orbits == 3


def test_budget_refusal():
    rs = rs_of("E6")
    with pytest.raises(BudgetExceeded):
        enumerate_weyl_group(rs, budget=1000)


def test_cyclic_shift():
    rs = rs_of("A2")
    x = from_word(rs, None, [0, 1, 0])  # s1 s2 s1
    s1 = from_word(rs, None, [0])
    assert cyclic_shift_reachable(x, x)
    assert cyclic_shift_reachable(x, s1)  # length drops 3 -> 1
    assert not cyclic_shift_reachable(s1, x)


def test_cyclic_shift_class_is_symmetric_at_min_length():
    for name in ("A3", "B2", "G2", "C3"):
        rs = rs_of(name)
        for cls in conjugacy_classes(rs):
            omin = min_length_set(cls)
            for y in omin:
                for z in omin:
                    # reachability at minimal length is symmetric: tested, not assumed
                    assert cyclic_shift_reachable(y, z) == cyclic_shift_reachable(z, y)


def test_is_elliptic():
    rs = rs_of("A2")
    assert not is_elliptic(identity_element(rs))
    cox = from_word(rs, None, [0, 1])
    assert is_elliptic(cox)
    rs4 = rs_of("A4")
    assert is_elliptic(from_word(rs4, None, [0, 1, 2, 3]))
    # C3 element from the worked example battery
    rsc = rs_of("C3")
    x = from_word(rsc, None, [2, 1, 2, 0, 1])  # s3 s2 s3 s1 s2
    assert is_elliptic(x)


def test_fixed_roots():
    rs = rs_of("A2")
    assert fixed_roots(identity_element(rs)) == frozenset(range(rs.count))
    s1 = from_word(rs, None, [0])
    assert fixed_roots(s1) == frozenset()


def test_fixed_roots_subset_of_signed_stable():
    # A fixed root never changes sign, so Phi^x is contained in Phi(x).
    from weylconvex.convexity import phi_of

    rs = rs_of("B2")
    for perm in enumerate_weyl_group(rs):
        from weylconvex.weyl import TwistedElement, WeylElement

        x = TwistedElement(rs, WeylElement(rs, perm), diagram_automorphisms(rs)[0], 0)
        assert fixed_roots(x) <= phi_of(x)


def test_from_one_line():
    rs = rs_of("A4")
    x = from_word(rs, None, [0, 1, 2, 3, 0, 1])
    # One-line form computed by the independent oracle above.
    p = one_line([0, 1, 2, 3, 0, 1], 5)
    y = from_one_line(rs, p)
    assert x == y


def test_inverse_and_order():
    rs = rs_of("A3")
    delta = flip_of("A3")
    x = from_word(rs, None, [0, 1], twist_power=1)
    ident = x.mul(x.inverse())
    assert ident.is_identity()
    assert x.order() >= 1
    xi = x
    for _ in range(x.order() - 1):
        xi = xi.mul(x)
    assert xi.is_identity()


def test_conjugation_consistency():
    rs = rs_of("A3")
    delta = flip_of("A3")
    x = from_word(rs, None, [1, 0], twist_power=1)
    s0 = from_word(rs, None, [0], twist_power=0)
    lhs = x.conj_by_simple(0)
    rhs = s0.mul(x).mul(s0)
    assert lhs == rhs


def test_class_of_roundtrip():
    rs = rs_of("B2")
    x = from_word(rs, None, [0, 1])
    cls = class_of(x)
    assert any(y == x for y in cls.elements)


def test_cyclic_shift_class_elements_share_length():
    rs = rs_of("A4")
    x = from_word(rs, None, [1, 2, 3, 0, 1, 2])
    peers = cyclic_shift_class(x)
    assert x in peers
    assert all(y.length() == 6 for y in peers)


def test_f4_class_count():
    classes = conjugacy_classes(rs_of("F4"))
    assert len(classes) == 25
    assert sum(len(c) for c in classes) == 1152


def test_min_length_shift_symmetry_more_types():
    for name in ("A1", "A2", "A4", "B3", "D4"):
        rs = rs_of(name)
        for cls in conjugacy_classes(rs):
            omin = min_length_set(cls)
            for y in omin:
                for z in omin:
                    assert cyclic_shift_reachable(y, z) == cyclic_shift_reachable(z, y)

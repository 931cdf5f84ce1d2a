import random

import pytest

from linkinv.algebra import LaurentPolynomial
from linkinv.diagram import BraidWord, braid_closure, parse_pd
from linkinv.skein import SkeinBudgetError, conway, dubrovnik, homfly, kauffman_f

Z = ("z",)
XY = ("x", "y")
X = LaurentPolynomial.gen(XY, "x")
Y = LaurentPolynomial.gen(XY, "y")
DELTA_H = (X - X ** -1) * Y ** -1
DELTA_D = LaurentPolynomial.one(XY) + DELTA_H


def zpoly(terms):
    return LaurentPolynomial(Z, terms)


def unknot():
    return parse_pd("O[1]\ncomponents: [[1]]\ncolors: [1]")


def unlink(m):
    toks = " ".join(f"O[{i}]" for i in range(1, m + 1))
    comps = "[" + ",".join(f"[{i}]" for i in range(1, m + 1)) + "]"
    cols = "[" + ",".join("1" for _ in range(m)) + "]"
    return parse_pd(f"{toks}\ncomponents: {comps}\ncolors: {cols}")


def hopf():
    return braid_closure(BraidWord(2, [1, 1]), name="hopf+")


def trefoil():
    return braid_closure(BraidWord(2, [1, 1, 1]), name="trefoil")


def fig8():
    return braid_closure(BraidWord(3, [1, -2, 1, -2]), name="fig8")


def borromean():
    return braid_closure(BraidWord(3, [1, -2, 1, -2, 1, -2]), name="borromean")


def whitehead():
    return braid_closure(BraidWord(3, [1, -2, 1, -2, 1]), name="whitehead")


def solomon():
    return braid_closure(BraidWord(2, [1, 1, 1, 1]), name="solomon")


SMALL = [unknot, hopf, trefoil, fig8, solomon, whitehead, borromean]


def test_conway_unknot():
    assert conway(unknot()) == LaurentPolynomial.one(Z)


def test_conway_split_links_vanish():
    assert conway(unlink(2)).is_zero
    assert conway(unlink(3)).is_zero
    assert conway(hopf().disjoint_union(unknot())).is_zero


def test_conway_hopf():
    assert conway(hopf()) == zpoly({(1,): 1})
    assert conway(hopf().switch(0).switch(1)) == zpoly({(1,): -1})


def test_conway_trefoils():
    expected = zpoly({(0,): 1, (2,): 1})
    assert conway(trefoil()) == expected
    assert conway(braid_closure(BraidWord(2, [-1, -1, -1]))) == expected


def test_conway_figure_eight():
    assert conway(fig8()) == zpoly({(0,): 1, (2,): -1})


def test_conway_borromean():
    assert conway(borromean()) == zpoly({(4,): 1})


def test_conway_whitehead_form():
    # lk = 0, Sato-Levine +-1: the polynomial is +-z^3
    p = conway(whitehead())
    assert p in (zpoly({(3,): 1}), zpoly({(3,): -1}))


def test_conway_chain_links():
    # hand recursion on closures of 2-braids sigma_1^k
    assert conway(solomon()) == zpoly({(1,): 2, (3,): 1})
    h3 = braid_closure(BraidWord(2, [1] * 6))
    assert conway(h3) == zpoly({(1,): 3, (3,): 4, (5,): 1})
    h4 = braid_closure(BraidWord(2, [1] * 8))
    assert conway(h4) == zpoly({(1,): 4, (3,): 10, (5,): 6, (7,): 1})


def test_conway_multiplicative_under_connected_sum():
    t = trefoil()
    for base, comp in ((hopf(), 0), (hopf(), 1), (whitehead(), 1), (borromean(), 2)):
        s = base.connected_sum(t, comp, 0)
        assert conway(s) == conway(base) * conway(t)


def test_conway_descent_independence():
    for make in (trefoil, whitehead, borromean):
        d = make()
        base = conway(d, memo={})
        for seed in range(10):
            assert conway(d, memo={}, rng=random.Random(seed)) == base


def test_conway_skein_relation_everywhere():
    z = LaurentPolynomial.gen(Z, "z")
    for make in SMALL:
        d = make()
        for ci in range(len(d.crossings)):
            pos = d if d.sign(ci) == 1 else d.switch(ci)
            neg = d.switch(ci) if d.sign(ci) == 1 else d
            smooth = d.smooth_oriented(ci)
            assert conway(pos) - conway(neg) == z * conway(smooth), (make.__name__, ci)


def test_budget_error():
    with pytest.raises(SkeinBudgetError):
        conway(borromean(), budget=2, memo={})


def test_homfly_unknot_and_unlinks():
    assert homfly(unknot()) == LaurentPolynomial.one(XY)
    assert homfly(unlink(2)) == DELTA_H
    assert homfly(unlink(3)) == DELTA_H * DELTA_H


def test_homfly_skein_relation_everywhere():
    for make in SMALL:
        d = make()
        for ci in range(len(d.crossings)):
            pos = d if d.sign(ci) == 1 else d.switch(ci)
            neg = d.switch(ci) if d.sign(ci) == 1 else d
            smooth = d.smooth_oriented(ci)
            assert X * homfly(pos) - X ** -1 * homfly(neg) == Y * homfly(smooth)


def test_homfly_specializes_to_conway():
    for make in SMALL:
        d = make()
        h = homfly(d)
        at_x1 = h.set_variable_to_one("x").rename_variables({"y": "z"})
        assert at_x1 == conway(d), make.__name__


def test_kauffman_unknot_and_kinks():
    assert kauffman_f(unknot()) == LaurentPolynomial.one(XY)
    kink_plus = braid_closure(BraidWord(2, [1]))
    kink_minus = braid_closure(BraidWord(2, [-1]))
    assert dubrovnik(kink_plus) == X
    assert dubrovnik(kink_minus) == X ** -1
    assert kauffman_f(kink_plus) == LaurentPolynomial.one(XY)
    assert kauffman_f(kink_minus) == LaurentPolynomial.one(XY)


def test_kauffman_unlink():
    assert kauffman_f(unlink(2)) == DELTA_D


def test_kauffman_writhe_bookkeeping():
    for make in SMALL:
        d = make()
        for ci in range(len(d.crossings)):
            pos = d if d.sign(ci) == 1 else d.switch(ci)
            neg = d.switch(ci) if d.sign(ci) == 1 else d
            smooth = d.smooth_oriented(ci)
            assert pos.writhe() - 1 == neg.writhe() + 1 == smooth.writhe()


def test_kauffman_skein_relation_everywhere():
    for make in SMALL:
        d = make()
        for ci in range(len(d.crossings)):
            pos = d if d.sign(ci) == 1 else d.switch(ci)
            neg = d.switch(ci) if d.sign(ci) == 1 else d
            smooth = d.smooth_oriented(ci)
            inf = d.smooth_infinity(ci)
            w0 = smooth.writhe()
            lhs = X * kauffman_f(pos) - X ** -1 * kauffman_f(neg)
            rhs = Y * (kauffman_f(smooth) - (X ** (-w0)) * dubrovnik(inf))
            assert lhs == rhs, (make.__name__, ci)


def test_kauffman_ambient_isotopy_on_reidemeister_one():
    # adding a kink to the trefoil braid leaves F unchanged
    t = braid_closure(BraidWord(2, [1, 1, 1]))
    t_kinked = braid_closure(BraidWord(3, [1, 1, 1, 2]))
    assert t_kinked.m == 1
    assert kauffman_f(t) == kauffman_f(t_kinked)
    assert homfly(t) == homfly(t_kinked)
    assert conway(t) == conway(t_kinked)

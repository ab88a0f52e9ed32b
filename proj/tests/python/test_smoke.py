from fractions import Fraction

import pytest

import reflab


def test_universal_slice_size():
    s = reflab.Slice.build("universal3", 5)
    assert len(s) == 3 * (2**6 - 1)
    assert s.rank == 3
    assert s.coeffs(0) == ["1", "0", "0"]
    assert s.depth(0) == 0


def test_lookup_and_csv():
    s = reflab.Slice.build("A2", 3)
    assert s.lookup(["1", "1"]) == 2
    assert s.lookup(["2", "1"]) is None
    assert s.roots_csv().splitlines()[0] == "id,depth,coeff_1,coeff_2,parent_id,parent_letter"


def test_order_and_verification():
    s = reflab.Slice.build("universal3", 4)
    ids = reflab.order(s, "lex:1,2,3")
    assert sorted(ids) == list(range(len(s)))
    assert ids[0] == 2 and ids[-1] == 0
    assert reflab.verify_order(s, "lex:3,1,2")["violations"] == 0
    a2 = reflab.Slice.build("A2~", 5)
    assert reflab.verify_order(a2, "two-sided")["violations"] == 0


def test_c_range_report():
    r = reflab.certify("c-range", 0, 8)
    assert r["status"] == "pass"
    assert Fraction(r["counts"]["max_below_one"]) == Fraction(2, 3)


def test_svg_is_deterministic():
    s = reflab.Slice.build("universal3", 4)
    a = reflab.render_svg(s, [(1, "2/3")])
    assert a.startswith("<svg")
    assert a == reflab.render_svg(s, [(1, "2/3")])


def test_errors():
    with pytest.raises(ValueError):
        reflab.Slice.build("B9", 2)
    with pytest.raises(ValueError):
        reflab.order(reflab.Slice.build("universal3", 2), "lex:1,1")
    with pytest.raises(reflab.ReflabError):
        reflab.render_svg(reflab.Slice.build("A2", 2))

"""Smoke test for the pyhypereuler extension module.

Build first, e.g. `maturin develop -m crates/python/Cargo.toml`, then run
`python python/smoke_test.py`.
"""

from fractions import Fraction

import pyhypereuler as hx


def main():
    assert hx.bernoulli(4) == [1, Fraction(1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert hx.faulhaber(1) == [Fraction(1, 2), Fraction(1, 2)]

    t = hx.coeff_table(3)
    assert t.a(2, 0) == Fraction(1, 2)
    assert t.a(1, 0) == Fraction(-3, 2)
    assert t.a(3, 0) is None
    assert len(t) == 6
    assert t.entries() == hx.coeff_table(3, route="b").entries()

    assert hx.h_closed(2, 2, 2) == Fraction(9, 4)
    assert hx.h_def(1, 3, 2) == hx.h_closed(1, 3, 2) == Fraction(7, 2)
    assert hx.conway_guy(3, 2) == Fraction(7, 2)

    e = hx.decompose(2, 2, 4)
    assert str(e) == "S(2,4) + S(2,3) - S(1,4)"
    assert e.terms() == [(2, 4, 1), (2, 3, 1), (1, 4, -1)]
    assert e.to_json()["euler_terms"][0] == {"p": 2, "q": 4, "coef": "1"}
    assert str(hx.decompose(1, 1, 3, reduce_s1=True)) == "5/2*zeta(4) - 1/2*zeta(2)^2"

    try:
        hx.decompose(1, 3, 3)
    except ValueError as err:
        assert "m >= r+1" in str(err)
    else:
        raise AssertionError("hypothesis not enforced")

    value, bound = hx.zeta_value(2, digits=12)
    assert value.startswith("1.644934066848")
    assert float(bound) <= 1e-12

    rep = hx.verify(1, 1, 2, digits=10)
    assert rep.passed
    assert rep.to_json()["pass"] is True
    assert rep.direct[0].startswith("2.4041138063")

    reports = hx.conjectures(6)
    assert len(reports) == 4 and all(r["all_pass"] for r in reports)

    print("smoke test OK")


if __name__ == "__main__":
    main()

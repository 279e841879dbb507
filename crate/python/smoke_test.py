"""Smoke test for the `superpi` extension module.

Build it first, e.g. `pip install --no-build-isolation -e crates/py` (needs
maturin) or `python python/build_ext.py`, then run `python python/smoke_test.py`.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import superpi  # noqa: E402


def main():
    t1, t2 = superpi.Poly.var(1), superpi.Poly.var(2)
    c = t1.commutator(t2)
    assert str(c) == "[t1,t2]"
    assert c.is_proper() and not (t1 * t2).is_proper()

    hall = superpi.Poly.parse("[[t1,t2]^2,t1]")
    assert hall == (c ** 2).commutator(t1)
    assert hall.on_f().is_zero()
    assert superpi.Poly.parse("[t1,t2]^3").on_f().is_zero()
    assert not c.on_f().is_zero()

    c1, c2 = superpi.Matrix.generic(1), superpi.Matrix.generic(2)
    assert c1.commutator(c2) ** 3 == superpi.Matrix.parse("[C1,C2]^3")
    assert c1.entry(0, 1) == "y1"

    assert superpi.render("[ t1 , t2 , t1^( 3 ) ]") == "[t1,t2,t1^(3)]"
    try:
        superpi.render("[t1,")
    except ValueError as e:
        assert "line 1, column 5" in str(e)
    else:
        raise AssertionError("expected a parse error")

    fbasis = superpi.catalog("fbasis")
    assert len(fbasis) == 3
    s4 = superpi.catalog("s4")[0]
    assert superpi.member(s4, fbasis)
    assert not superpi.member(c * superpi.Poly.parse("[t3,t4]"), fbasis)

    ut2 = superpi.Algebra.builtin("ut2")
    assert ut2.dim == 3
    assert ut2.is_identity(superpi.Poly.parse("[t1,t2]*[t3,t4]"))
    again = superpi.Algebra.from_json(ut2.to_json())
    assert again.identity_dim(4) == ut2.identity_dim(4)

    m11 = superpi.Algebra.builtin("m11:3")
    popov = superpi.catalog("popov")
    assert all(m11.is_identity(p) for p in popov)
    assert not m11.is_identity(s4)

    assert superpi.gamma_dims(5) == (44, 44, 44, 15)

    code, text = superpi.verify("two-variable")
    report = json.loads(text)
    assert code == 0 and report["totals"]["refuted"] == 0, report["totals"]
    print("superpi smoke test: ok ({} two-variable claims)".format(report["totals"]["claims"]))


if __name__ == "__main__":
    main()

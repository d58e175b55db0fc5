"""Exercises the extension module end to end.

Build and install first, e.g. `maturin develop` or
`pip install --no-build-isolation .` inside crates/python.
"""

import fuzzy_horn_py as fh

HORN = """\
pred P/1 Q/1
const c
P(c)
(forall x)(P(x) -> Q(x))
"""

TARGET = """\
algebra boolean
domain a b
fun c/0: a
pred P/1: 1 0
pred Q/1: 1 1
"""

LUKASIEWICZ = """\
algebra lukasiewicz
domain a
fun c/0: a
pred P1/1: 1
pred P2/1: 9/10
pred P3/1: 1/2
"""


def main():
    assert fh.conj("lukasiewicz", "1/2", "1/2") == "0"
    assert fh.residuum("lukasiewicz", "9/10", "1/2") == "3/5"

    theory = fh.Theory(HORN)
    assert theory.is_horn()
    assert [tag for _, _, tag in theory.classify()] == ["basic-horn", "horn-clause"], theory.classify()

    sat = theory.saturate()
    assert sat.consistent
    assert sorted(sat.atoms()) == ["P(c)", "Q(c)"]
    assert sat.derives("Q(c)") is True
    assert sat.derives("Q(v1)") is False

    term = sat.term_structure()
    assert term.is_model(theory) == (True, None)

    target = fh.Structure(TARGET)
    map_text = sat.free_map(target, {"v1": "b"})
    report = fh.hom_check(term, target, map_text)
    assert report["kind"] != "not-homomorphism", report

    atoms, complete = theory.least_h_model()
    assert atoms == ["P(c)", "Q(c)"] and complete

    luk = fh.Structure(LUKASIEWICZ)
    assert luk.eval("P1(c) & P2(c) -> P3(c)") == "3/5"
    assert luk.eval("P1(c) & P2(c) -> P3(c)", decimal=True).startswith("0.6")
    assert luk.h_structure(0) == ["P1(c)"]

    for example in fh.examples():
        ok, text = fh.repro(example)
        assert ok, text

    try:
        fh.Theory("pred P/1\nP(c) ->\n")
    except fh.FuzzyHornError as e:
        assert "line 2" in str(e), e
    else:
        raise AssertionError("parse error not raised")

    print("smoke test passed")


if __name__ == "__main__":
    main()

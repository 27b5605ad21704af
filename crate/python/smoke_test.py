"""Smoke test for the forest_skein_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/forest-skein-py
"""

import forest_skein_py as fsk


def main():
    assert "cleary" in fsk.Presentation.examples()

    cleary = fsk.Presentation.example("cleary")
    assert cleary.colours == ["a", "b"]
    assert cleary.is_complemented() and cleary.is_complete()
    assert cleary.left_cancellative()["verdict"] == "yes"
    assert cleary.ore()["confidence"] == "proved"
    spine = cleary.spine()
    assert spine["stabilized"] and spine["spine_size"] == 3

    pres = cleary.group_presentation("finite")
    assert len(pres["generators"]) == 6 and len(pres["relations"]) == 30
    assert pres["abelianization"] == "Z^2 + Z/2"

    assert cleary.equal("a1 a1", "b1 b2") is True
    assert cleary.eval("b1^-1 b1") == "[I ; I]"
    assert cleary.trees_equal("a(a(I,I),I)", "b(I,b(I,I))") is True

    free1 = fsk.Presentation.example("free1")
    assert free1.compare("a(I,I):1", "a(I,I):2") == -1
    assert free1.act("[a(a(I,I),I) ; cyc3 ; a(a(I,I),I)]", "a(a(I,I),I):1") == "a(a(I,I),I):2"
    assert cleary.transitivity_witness(["a(I,I):1"], ["b(I,I):2"]) is not None

    free2 = fsk.Presentation.example("free2")
    assert free2.ore()["verdict"] == "no"

    custom = fsk.Presentation("name: gn3\ncolors: a, b\nrel: a1 a1 a1 = b1 b2 b3\n")
    assert custom.group_presentation("finite")["abelianization"] == "Z^2 + Z/3"

    print("smoke test passed")


if __name__ == "__main__":
    main()

"""End-to-end checks of the Python module against pinned values."""

import anwel


def test_closed_form_helpers():
    assert anwel.delta_invariant(5) == 3
    assert anwel.milnor_number(5) == 5
    assert anwel.cusp_count_ec(4) == 1
    assert anwel.cusp_count_ec(3) == 0
    assert anwel.multiplicity_eg(4, 2) == 3
    assert anwel.multiplicity_ec(3) == 3


def test_count_eg_pinned():
    rep = anwel.count("eg", n=4, i=2, seed=7)
    assert rep["stratum"] == "eg"
    assert rep["complex_count"] == 3
    assert rep["expected_multiplicity"] == 3
    assert rep["W"] == 1
    assert len(rep["real_solutions"]) == 1
    assert rep["real_solutions"][0]["sign"] == 1


def test_count_eg_defaults_to_the_top_stratum():
    rep = anwel.count("eg", n=4, seed=7)
    assert rep["i"] == anwel.delta_invariant(4)


def test_count_ec_and_discr_pinned():
    assert anwel.count("ec", k=3, seed=1)["W"] == 1
    assert anwel.count("ec", n=6, seed=1)["W"] == 1  # even n stands in for k
    discr = anwel.count("discr", n=2, seed=5)
    assert discr["complex_count"] == 2
    assert discr["W"] == 0


def test_invariance_pinned():
    verdict = anwel.invariance("eg", 6, 3, trials=25, seed=42)
    assert verdict["invariant"] is True
    assert verdict["real_count_histogram"] == {"0": 7, "2": 18}
    assert set(verdict["W_values"]) == {0}


def test_invariance_accepts_k_for_ec():
    # k is shorthand for n = 2k, matching count() and the CLI
    by_k = anwel.invariance("ec", k=2, trials=4, seed=9)
    by_n = anwel.invariance("ec", 4, trials=4, seed=9)
    assert by_k == by_n
    assert by_k["invariant"] is True
    try:
        anwel.invariance("ec", trials=4)
    except ValueError:
        pass
    else:
        raise AssertionError("ec without n or k should be rejected")


def test_table():
    doc = anwel.table(2)
    assert doc["all_match"] is True
    rows = doc["rows"]
    assert len(rows) == 7
    assert all(row["matches"] for row in rows)
    assert rows[0]["n"] == 1
    assert rows[0]["stratum"] == "EG^1"

    csv = anwel.table_csv(2)
    header = csv.splitlines()[0]
    assert header == "n,form,stratum,mt_computed,mt_formula,W_computed,W_formula"
    assert len(csv.splitlines()) == 8


def test_ec_closed_form():
    witnesses = anwel.ec_closed_form(1)
    assert len(witnesses) == 1
    beta = witnesses[0]["beta"]
    assert abs(beta - (1.0 / 3.0)) < 1e-12


def test_errors_surface_as_exceptions():
    try:
        anwel.count("eg", n=4, i=9, seed=1)
    except Exception:
        pass
    else:
        raise AssertionError("out-of-range index was accepted")

    try:
        anwel.count("nope", n=2)
    except Exception:
        pass
    else:
        raise AssertionError("unknown stratum was accepted")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"{test.__name__}: ok")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()

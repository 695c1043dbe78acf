"""Instance files, polynomial literals, command reports, exit codes."""

import json

import pytest

from spbw import corpus
from spbw.errors import ParseError, ValidationError
from spbw.cli import (
    main,
    parse_instance,
    parse_mpoly,
    parse_poly,
    run_command,
    serialize_instance,
)
from spbw.properties import TheoremReport, VIOLATION


# -- instance parsing -------------------------------------------------------


def test_corpus_listing():
    names = corpus.names()
    assert len(names) == 6
    assert names == tuple(sorted(names))
    with pytest.raises(KeyError):
        corpus.load("no-such-instance")


def test_round_trip_is_canonical(instances):
    for name, inst in instances.items():
        text = serialize_instance(inst)
        again = parse_instance(text)
        assert again.canonical == inst.canonical, name
        assert again.digest == inst.digest, name


def test_ring_shorthands():
    base = {"variables": 1, "sigma": ["id"], "delta": ["zero"],
            "module": "regular"}
    for ring, order in [("Z7", 7), ("Z2xZ3", 6), ("Z2[y]/(y^2)", 4),
                        ("UT(2,Z3)", 27)]:
        inst = parse_instance(json.dumps(dict(base, ring=ring)))
        assert inst.ring.order == order


def test_ring_table_form():
    add = [[0, 1], [1, 0]]
    mul = [[0, 0], [0, 1]]
    text = json.dumps({"ring": {"add": add, "mul": mul, "label": "F2"},
                       "variables": 1, "sigma": ["id"], "delta": ["zero"],
                       "module": "regular"})
    inst = parse_instance(text)
    assert inst.ring.order == 2
    assert inst.ring.label == "F2"


def test_parse_rejects_unknown_keys():
    with pytest.raises(ParseError):
        parse_instance(json.dumps({"ring": "Z3", "variables": 1,
                                   "sigma": ["id"], "delta": ["zero"],
                                   "module": "regular", "extra": 1}))


def test_parse_rejects_bad_json_with_position():
    with pytest.raises(ParseError) as err:
        parse_instance("{\n  \"ring\": }")
    assert err.value.line == 2
    assert err.value.col is not None


def test_parse_rejects_bad_relations():
    base = {"ring": "Z3", "variables": 2, "sigma": ["id", "id"],
            "delta": ["zero", "zero"], "module": "regular"}
    with pytest.raises(ParseError):
        parse_instance(json.dumps(dict(base, relations={"2,1": {"c": "1"}})))
    with pytest.raises(ParseError):
        parse_instance(json.dumps(dict(base, relations={"1,3": {"c": "1"}})))
    with pytest.raises(ParseError):
        parse_instance(json.dumps(dict(base, relations={"nonsense": "1"})))
    # missing relation surfaces as a validation error from the engine
    with pytest.raises(ValidationError):
        parse_instance(json.dumps(base))


def test_parse_sigma_delta_forms(swap):
    # a table spelling of the swap map builds the same presentation; the
    # canonical form keeps the author's spelling, so digests differ
    table_form = dict(json.loads(serialize_instance(swap)))
    table_form["sigma"] = [[0, 2, 1, 3]]
    inst = parse_instance(json.dumps(table_form))
    assert inst.presentation.sigma_tables == swap.presentation.sigma_tables
    assert inst.canonical["sigma"] == [[0, 2, 1, 3]]
    assert inst.digest != swap.digest


def test_order_override_changes_digest(z3):
    text = serialize_instance(z3)
    lex = parse_instance(text, order_override="lex")
    assert lex.presentation.order.kind == "lex"
    assert lex.digest != z3.digest
    # the canonical form spells the full order object
    assert lex.canonical["order"]["kind"] == "lex"


def test_embedding_forms(z4):
    text = json.loads(serialize_instance(z4))
    assert z4.embedding == tuple(range(4))
    text["embedding"] = {"generator": "3"}
    inst = parse_instance(json.dumps(text))
    assert inst.embedding == (0, 3, 2, 1)
    text["embedding"] = [0, 3, 2, 1]
    inst2 = parse_instance(json.dumps(text))
    assert inst2.embedding == (0, 3, 2, 1)
    del text["embedding"]
    inst3 = parse_instance(json.dumps(text))
    assert inst3.embedding is None


def test_quotient_module_form(weyl):
    assert weyl.module.order == 2
    assert weyl.embedding is None
    assert weyl.canonical["module"] == {"quotient": ["y"]}


# -- polynomial literals ------------------------------------------------------


def test_parse_poly_shapes(quantum):
    P = quantum.presentation
    f = parse_poly(P, "2*x1^2*x2 + 3")
    assert f.terms == {(2, 1): 2, (0, 0): 3}
    assert parse_poly(P, "0").is_zero()
    # whitespace tolerated
    g = parse_poly(P, " x1 * x2 ")
    assert g.terms == {(1, 1): 1}


def test_parse_poly_respects_skew_order(swap):
    P = swap.presentation
    left = parse_poly(P, "(0,1)*x1")
    right = parse_poly(P, "x1*(0,1)")
    # x1 r = sigma(r) x1: the swap moves the coefficient
    assert left.terms == {(1,): P.ring.element_index("(0,1)")}
    assert right.terms == {(1,): P.ring.element_index("(1,0)")}


def test_parse_poly_commutative_coincidence(z6):
    P = z6.presentation
    assert parse_poly(P, "2*x1") == parse_poly(P, "x1*2")


def test_parse_poly_errors(quantum):
    P = quantum.presentation
    for bad in ("", "x1**x2", "x3", "x0", "7", "x1^0*junk", "+", "x1^-2"):
        with pytest.raises((ParseError, ValidationError)):
            parse_poly(P, bad)


def test_parse_mpoly(weyl):
    M, P = weyl.module, weyl.presentation
    u = parse_mpoly(M, P, "[1]*x1 + [1]")
    assert u.terms == {(1,): 1, (0,): 1}
    # module element must come first
    with pytest.raises(ParseError):
        parse_mpoly(M, P, "x1*[1]")
    # ring elements cannot appear after the module coefficient
    with pytest.raises(ParseError):
        parse_mpoly(M, P, "[1]*y")
    with pytest.raises((ParseError, ValidationError)):
        parse_mpoly(M, P, "nope*x1")


# -- commands through run_command ---------------------------------------------


def test_mul_command_quantum(quantum):
    report, code = run_command(quantum, "mul", ["x2", "x1"], {})
    assert code == 0
    assert report["result"]["product"]["text"] == "2*x1*x2"
    assert report["schema"] == 1
    assert report["instance"]["digest"] == quantum.digest


def test_act_command_weyl(weyl):
    report, code = run_command(weyl, "act", ["[1]*x1", "y"], {})
    assert code == 0
    assert report["result"]["value"]["text"] == "[1]"


def test_ann_command_z4(z4):
    report, code = run_command(z4, "ann", ["2"], {})
    assert code == 0
    res = report["result"]
    assert res["annihilator"] == ["0", "2"]
    assert res["idempotent"] is None


def test_check_command_exit_code(z4, z3):
    report, code = run_command(z4, "check", ["pp"], {})
    assert code == 1
    assert report["result"]["status"] == "fails"
    assert report["result"]["witness"]["m"] == "2"

    report, code = run_command(z3, "check", ["pp"], {})
    assert code == 0
    assert report["result"]["status"] == "holds"


def test_validate_command(weyl):
    report, code = run_command(weyl, "validate", [], {})
    assert code == 0
    res = report["result"]
    assert res["valid"] is True
    assert res["quasi_commutative"] is False
    assert res["bijective"] is True
    assert res["consistency_certificate"] == 4
    assert res["canonical"] == weyl.canonical


def test_theorems_command_counts(z4):
    report, code = run_command(z4, "theorems", [], {"degree": 2})
    assert code == 0
    res = report["result"]
    assert len(res["reports"]) == 17
    assert sum(res["summary"].values()) == 17
    assert "violation" not in res["summary"]


def test_unknown_property_and_command(z3):
    from spbw.errors import UnknownProperty
    with pytest.raises(UnknownProperty):
        run_command(z3, "check", ["frobenius"], {})
    with pytest.raises(ParseError):
        run_command(z3, "mul", ["x1"], {})
    with pytest.raises(ParseError):
        run_command(z3, "frobnicate", [], {})


# -- the executable surface ---------------------------------------------------


def test_main_validate_exit_zero(capsys):
    assert main(["z4-regular", "validate", "--json-only"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out)
    assert payload["result"]["valid"] is True


def test_main_check_exit_one(capsys):
    assert main(["z4-regular", "check", "pp", "--json-only"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["status"] == "fails"


def test_main_missing_file_exit_two(capsys):
    assert main(["./does-not-exist.json", "validate", "--json-only"]) == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["error"]["type"] == "ParseError"


def test_main_unknown_property_exit_two(capsys):
    assert main(["z3-trivial", "check", "frobenius", "--json-only"]) == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["error"]["type"] == "UnknownProperty"
    assert "frobenius" in payload["error"]["message"]


def test_main_byte_identical_reruns(capsys):
    first = main(["z4-regular", "theorems", "--json-only"])
    out1 = capsys.readouterr().out
    second = main(["z4-regular", "theorems", "--json-only"])
    out2 = capsys.readouterr().out
    assert first == second == 0
    assert out1 == out2


def test_main_human_summary_on_stderr(capsys):
    main(["z4-regular", "check", "reduced"])
    captured = capsys.readouterr()
    json.loads(captured.out)  # stdout stays pure JSON
    assert "spbw check" in captured.err
    assert "reduced" in captured.err


def test_main_violation_exit_three(monkeypatch, capsys):
    import spbw.cli as cli_mod

    def fake_suite(M, P, degree=2, embedding=None, max_space=0):
        return [TheoremReport("synthetic", VIOLATION, (), "forced", None)]

    monkeypatch.setattr(cli_mod, "theorem_suite", fake_suite)
    assert main(["z4-regular", "theorems", "--json-only"]) == 3
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["summary"] == {"violation": 1}


def test_main_search_space_error(capsys):
    code = main(["z3-trivial", "check", "skew_armendariz",
                 "--degree", "3", "--max-space", "10", "--json-only"])
    assert code == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["error"]["type"] == "SearchSpaceTooLarge"
    assert payload["error"]["limit"] == 10

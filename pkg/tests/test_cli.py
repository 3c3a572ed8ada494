import json
import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakclifford.cli import (
    REPORT_SCHEMA,
    ParseError,
    RunConfig,
    load_config_file,
    main,
    parse_expression,
)
from weakclifford.freealg import Element, MetricSpace, concat, format_element, wedge
from weakclifford.geometry import j_image, pbw_image
from weakclifford.uea import casimir, format_pbw, multipole, pbw_normal_form

from conftest import rationals

E = MetricSpace.euclidean(3)
e1, e2, e3 = (E.basis(i) for i in (1, 2, 3))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


# parser ----------------------------------------------------------------------------------
def test_precedence_and_associativity():
    assert parse_expression("e1^e2*e3") == concat(wedge(e1, e2), e3)
    assert parse_expression("e1*e2^e3") == concat(e1, wedge(e2, e3))
    assert parse_expression("e1^e2^e3") == wedge(e1, e2, e3)
    assert parse_expression("-e1*e2") == -concat(e1, e2)
    assert parse_expression("e1 - e2 - e3") == e1 - e2 - e3
    assert parse_expression("e1.e2*e3") == Element({(1, 2, 3): 1}, 3)
    assert parse_expression("2*(e1 + e2)") == (e1 + e2).scale(2)
    assert parse_expression("- - e1") == e1
    assert parse_expression("1/2*e1.e2 - 1/2*e2.e1") == wedge(e1, e2)


def test_generators_and_casimir():
    assert parse_expression("J3") == j_image(3)
    assert parse_expression("J3", j_mode="strong") == j_image(3, strong=True)
    assert parse_expression("C") == pbw_image(casimir())
    assert parse_expression("C", j_mode="letters") == Element({(1, 1): 1, (2, 2): 1, (3, 3): 1})
    assert parse_expression("J1.J2 - J3", j_mode="letters") == Element({(1, 2): 1, (3,): -1})


@pytest.mark.parametrize("text, pos", [("e1 + * e2", 5), ("(e1", 3), ("e1 e2", 3), ("e1 + x", 5), ("", 0),
                                       ("J4", 0), ("1/0", 0)])
def test_parse_errors_are_positioned(text, pos):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.pos == pos
    assert "^" in str(info.value)


def test_dimension_checks():
    with pytest.raises(ParseError):
        parse_expression("e4")
    assert parse_expression("e4", dim=4) == MetricSpace.euclidean(4).basis(4)
    with pytest.raises(ParseError):
        parse_expression("J1", dim=4)
    with pytest.raises(ParseError):
        parse_expression("e1", j_mode="letters")


printed = st.dictionaries(st.lists(st.integers(1, 9), max_size=4).map(tuple), rationals, max_size=5)


@settings(max_examples=1000)
@given(printed)
def test_parse_print_round_trip(terms):
    x = Element(terms, 9)
    assert parse_expression(format_element(x), dim=9) == x


@settings(max_examples=100)
@given(st.dictionaries(st.lists(st.integers(1, 3), max_size=4).map(tuple), rationals, max_size=4))
def test_pbw_text_round_trip(terms):
    x = pbw_normal_form(Element(terms))
    assert pbw_normal_form(parse_expression(format_pbw(x), j_mode="letters")) == x


# commands ----------------------------------------------------------------------------------
def test_multipole_command(capsys):
    assert run(capsys, "multipole", "1", "2")[:2] == (0, "J2")
    assert run(capsys, "multipole", "0")[:2] == (0, "1")
    assert run(capsys, "multipole", "2", "1", "2")[:2] == (0, format_pbw(multipole(2, (1, 2))))
    assert run(capsys, "multipole", "2", "1", "4")[0] == 2
    assert run(capsys, "multipole", "2", "1")[0] == 2


def test_reduce_command(capsys):
    assert run(capsys, "reduce", "--algebra", "clifford", "e1*e1")[:2] == (0, "1")
    assert run(capsys, "reduce", "--algebra", "weak", "(e1^e2)*e1 - e1*(e1^e2)")[:2] == (0, "e2")
    assert run(capsys, "reduce", "--algebra", "sym", "e1*e2 - e2*e1")[:2] == (0, "0")
    assert run(capsys, "reduce", "--spin", "1/2", "C")[:2] == (0, "-3/4")
    assert run(capsys, "reduce", "--algebra", "clifford", "J1*J1 + J2*J2 + J3*J3")[:2] == (0, "-3/4")


def test_reduce_errors(capsys):
    code, _, err = run(capsys, "reduce", "--algebra", "weak", "e1 + * e2")
    assert code == 2 and "position 5" in err
    assert run(capsys, "reduce", "-D", "1", "e1*e2")[0] == 2
    assert run(capsys, "reduce", "--algebra", "bogus", "e1")[0] == 2
    assert run(capsys, "reduce", "--spin", "1/3", "e1")[0] == 2


def test_spin_zero_routes_to_symmetric(capsys):
    code, out, err = run(capsys, "reduce", "--algebra", "spin:0", "e1*e2 - e2*e1")
    assert (code, out) == (0, "0")
    assert "symmetric" in err


def test_dims_command(capsys):
    for algebra, D, expected in (("clifford", "4", "1 4 7 8 8"), ("sym", "3", "1 4 10 20"), ("free", "2", "1 4 13")):
        code, out, _ = run(capsys, "dims", "--algebra", algebra, "-D", D)
        assert code == 0 and out.splitlines()[0] == expected
        assert "stabilized" in out


def test_dims_audit_failure(capsys):
    code, out, err = run(capsys, "dims", "--spin", "1/2", "-D", "4", "-H", "0")
    assert code == 1 and "increase headroom" in err


def test_metric_table(capsys):
    code, out, _ = run(capsys, "metric-table", "0", "1/2", "1", "--format", "json")
    rows = {r["s"]: r["norms"] for r in json.loads(out)["results"][0]["spins"]}
    assert rows["1/2"]["bivector"] == "-1/4"
    assert rows["0"]["bivector"] == rows["0"]["trivector"] == "0"
    assert (rows["1"]["bivector"], rows["1"]["trivector"]) == ("-2/3", "2/3")
    code, out, _ = run(capsys, "metric-table")
    assert code == 0 and "s=1/2: scalar norm 1, vector norm 1, bivector norm -1/4" in out


def test_mon_and_solve_f(capsys):
    assert run(capsys, "mon", "J1*J1")[:2] == (0, "1/3*C")
    assert run(capsys, "mon", "J1.J2.J3 - J3.J2.J1")[:2] == (0, "1/3*C")
    assert run(capsys, "mon", "e1")[0] == 2
    code, out, _ = run(capsys, "solve-f")
    assert code == 0 and out.startswith("k*(1, -1, 0)")


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "clifford-spin-half")
    assert code == 0 and "quadrupole images vanish" in out
    code, out, _ = run(capsys, "verify", "--suite", "multipoles", "--kmax", "4")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--suite", "f-constraint", "--format", "json")
    report = json.loads(out)
    assert code == 0 and "k*(1, -1, 0)" in report["results"][0]["checks"][0]["value"]
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


# reports and configuration -----------------------------------------------------------------------
JSON_COMMANDS = [
    ["multipole", "2", "1", "3"],
    ["reduce", "--algebra", "clifford", "e1*e2*e1"],
    ["dims", "--algebra", "clifford", "-D", "3"],
    ["metric-table", "1/2"],
    ["solve-f"],
    ["mon", "J2*J2"],
    ["verify", "--suite", "spin-zero"],
]


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: a[0])
def test_json_reports_follow_schema(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["command"] == argv[0]


def test_output_is_deterministic(capsys):
    argv = ["verify", "--suite", "f-constraint", "--seed", "7", "--format", "json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_config_file_and_env(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "run.conf"
    cfg.write_text("# defaults\nalgebra = clifford\nheadroom = 3\nformat = json\n")
    assert load_config_file(str(cfg)) == {"algebra": "clifford", "headroom": 3, "format": "json"}
    monkeypatch.setenv("WEAKCLIFFORD_CONFIG", str(cfg))
    code, out, _ = run(capsys, "reduce", "e2*e2")
    report = json.loads(out)
    assert code == 0 and report["results"][0]["reduced"] == "1"
    assert report["config"]["headroom"] == 3
    # flags override the file
    code, out, _ = run(capsys, "reduce", "--algebra", "sym", "--format", "text", "e2*e1")
    assert out == "e1.e2"
    cfg.write_text("bogus = 1\n")
    assert run(capsys, "reduce", "e1")[0] == 2


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(degree=-1)
    with pytest.raises(ValueError):
        RunConfig(format="xml")
    assert RunConfig(spin="1").selector == "spin:1"

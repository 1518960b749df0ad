import json
import random
from fractions import Fraction

import pytest

from superjacobi.errors import ExprError, FormatError, UsageError
from superjacobi.exprcli.cli import main
from superjacobi.exprcli.parser import Num, Power, Sum, elaborate, parse_expr, parse_poly
from superjacobi.exprcli.printer import print_expr, print_field
from superjacobi.exprcli.structfile import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    bundled_names,
    load_structure,
    parse_structure_document,
    run_checks,
    select_checks,
)
from superjacobi.factories import make_de_rham, make_odd_contact
from superjacobi.identities import Sampler
from superjacobi.superpoly import Chart

CH = Chart([("x", 0), ("y", 0), ("t1", 1), ("t2", 1)])


def doc(**over):
    base = {
        "name": "line",
        "coordinates": [{"name": "x", "parity": "even"}, {"name": "theta", "parity": "odd"}],
        "structure": {"S": "0", "Q": {"x": "theta"}},
    }
    base.update(over)
    return base


def test_parse_examples():
    x, y, t1, t2 = (CH.var(n) for n in ("x", "y", "t1", "t2"))
    assert parse_poly("x^2 - 3/2*y", CH) == x * x - y.scale(Fraction(3, 2))
    assert parse_poly("t2*t1 + t1*t2", CH).is_zero()
    assert parse_poly("-(x + 1)^2", CH) == -((x + 1) * (x + 1))
    assert parse_poly("2 * (t1 - t2) * x", CH) == (t1 - t2) * x.scale(2)
    assert parse_poly("0", CH).is_zero()


def test_ast_shape():
    ast = parse_expr("x^3 + 4", CH)
    assert isinstance(ast.root, Sum)
    kinds = {type(t[1]) if isinstance(t, tuple) else type(t) for t in ast.root.terms}
    assert Power in kinds or Num in kinds
    assert elaborate(ast) == CH.var("x") ** 3 + 4


@pytest.mark.parametrize("src,line,col", [
    ("x + z", 1, 5),
    ("x +\n  + ", 2, 3),
    ("x ^ y", 1, 5),
    ("(x + 1", 1, 7),
    ("x $ 2", 1, 3),
])
def test_parse_errors_have_positions(src, line, col):
    with pytest.raises(ExprError) as info:
        parse_poly(src, CH)
    assert (info.value.line, info.value.column) == (line, col)


def test_odd_powers_rejected():
    with pytest.raises(ExprError):
        parse_poly("t1^2", CH)
    with pytest.raises(ExprError):
        parse_poly("(x + t1)^2", CH)
    # the rule is about parity, so t1^1 is refused as well
    with pytest.raises(ExprError):
        parse_poly("t1^1", CH)
    assert parse_poly("(t1*t2)^1", CH) == CH.var("t1") * CH.var("t2")


def test_print_parse_round_trip():
    s = Sampler(max_degree=4, max_coeff=9, max_terms=5)
    for t in range(100):
        p = s.draw(CH, random.Random(t))
        p = p + p.scale(Fraction(-1, 3)) if t % 3 == 0 else p
        assert parse_poly(print_expr(p), CH) == p


def test_print_field(contact1):
    assert print_field(contact1.Q) == "(-1) d/dtau"
    assert print_field(make_de_rham(1).Q) == "(1 * th1) d/dx1"


def test_bundled_files_match_factories():
    assert "odd_contact_1.json" in bundled_names()
    for name, ref in (("odd_contact_1", make_odd_contact(1)), ("odd_contact_2", make_odd_contact(2)),
                      ("qmanifold_derham_2", make_de_rham(2))):
        J, checks = load_structure(f"bundled:{name}")
        assert J.base == ref.base and J.S == ref.S and J.Q == ref.Q
        assert checks


def test_format_error_pointer():
    bad = doc(coordinates=[{"name": "x", "parity": "even"}, {"name": "theta", "parity": "evn"}])
    with pytest.raises(FormatError) as info:
        parse_structure_document(bad)
    assert info.value.pointer == "/coordinates/1/parity"
    with pytest.raises(FormatError) as info:
        parse_structure_document(doc(extra=1))
    assert info.value.pointer == "/extra"


def test_momentum_name_collision():
    bad = doc(coordinates=[{"name": "x", "parity": "even"}, {"name": "p_x", "parity": "even"}],
              structure={"S": "0", "Q": {}})
    with pytest.raises(FormatError):
        parse_structure_document(bad)


def test_expression_error_in_file():
    with pytest.raises(ExprError) as info:
        parse_structure_document(doc(structure={"S": "0", "Q": {"x": "theta +"}}))
    assert "/structure/Q/x" in str(info.value)


def test_check_list_validation():
    with pytest.raises(FormatError):
        parse_structure_document(doc(checks=[{"id": "NOPE"}]))
    with pytest.raises(FormatError):
        parse_structure_document(doc(checks=[{"id": "JACOBI_LODAY"}, {"id": "JACOBI_LODAY"}]))
    with pytest.raises(FormatError):
        parse_structure_document(doc(checks=[{"id": "JACOBI_LODAY", "trials": 0}]))
    J, checks = parse_structure_document(doc(checks=[{"id": "left_leibniz", "trials": 7}]))
    assert checks[0].trials == 7


def test_select_checks():
    J, checks = parse_structure_document(doc())
    sel = select_checks(checks, only=["STAR_HAM", "JACOBI_LODAY"], seed=4, trials=3)
    assert [c.id.value for c in sel] == ["JACOBI_LODAY", "STAR_HAM"]
    assert all(c.seed == 4 and c.trials == 3 for c in sel)
    with pytest.raises(UsageError):
        select_checks(checks, only=["NOPE"])


def test_invalid_structure_skips_checks():
    J, checks = parse_structure_document(doc(structure={"S": "0", "Q": {"x": "theta", "theta": "1"}}))
    report = run_checks(J, select_checks(checks, trials=2))
    assert report.exit_code == EXIT_FAILURE
    assert all(r.report.status == "skipped" for r in report.results)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_exit_codes(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "verify", "bundled:qmanifold_derham_2", "--trials", "5")
    assert code == EXIT_OK and "exit code 0" in out
    code, _, _ = run_cli(capsys, "verify", "bundled:su2_perturbed_offdiagonal", "--trials", "2")
    assert code == EXIT_FAILURE
    code, _, err = run_cli(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == EXIT_USAGE and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc(structure={"S": "0", "Q": {"x": "theta *"}})))
    code, _, err = run_cli(capsys, "verify", str(bad))
    assert code == EXIT_USAGE and "line 1" in err
    code, _, _ = run_cli(capsys, "verify", "bundled:odd_contact_1", "--only", "NOPE")
    assert code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["verify"])
    assert info.value.code == EXIT_USAGE


def test_cli_list(capsys):
    code, out, _ = run_cli(capsys, "list")
    assert code == 0 and "JACOBI_LODAY" in out and "bundled:odd_contact_1" in out


def test_json_report_is_byte_stable(capsys):
    argv = ["verify", "bundled:odd_contact_1", "--format", "json", "--trials", "10",
            "--only", "SKEWSYMMETRY_PROBE,SYMMETRIZATION"]
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["exit_code"] == 0
    skew = next(c for c in rep["checks"] if c["id"] == "SKEWSYMMETRY_PROBE")
    assert skew["status"] == "expected-fail-confirmed"
    assert 1 <= len(skew["witnesses"]) <= 3

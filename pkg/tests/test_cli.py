import json

import pytest

from src.algebra import UnknownVariableError, parse_poly
from src.crosscap import minimal_crosscap
import vk_tool
from vk_tool import EXIT_INPUT, EXIT_OK, Request, main, parse_germ, run


def test_parse_germ_examples():
    assert parse_germ("V2 + W1, U1", 3).q == 2
    assert parse_germ("U1 + V2^2", 3).q == 1
    with pytest.raises(UnknownVariableError):
        parse_germ("U5", 3)


def test_parse_germ_generic_names():
    h = parse_germ("x*y, x^2", None, ["x", "y"])
    assert h.source.names == ("x", "y")


def test_codim_command():
    code, report = run(Request("codim", k=3, germ="U1 + V2^2"))
    assert code == EXIT_OK
    assert report['codimension'] == 2
    assert report['normal_basis'] == ["1", "V2"]
    assert report['determinacy'] == 2
    assert report['stabilization_degree'] == 2
    assert report['status'] == "pass"


def test_codim_infinite():
    code, report = run(Request("codim", k=3, germ="U1", max_degree=3))
    assert code == EXIT_OK
    assert report['codimension'] == "infinite"


def test_codim_infinite_at_default_bound():
    code, report = run(Request("codim", k=4, germ="U2"))
    assert code == EXIT_OK
    assert report['codimension'] == "infinite"


@pytest.mark.slow
def test_classify_k4_passes():
    code, report = run(Request("classify", k=4))
    assert code == EXIT_OK
    assert report['status'] == "pass"


def test_transversal_command():
    code, report = run(Request("transversal", k=3, germ="U1", degree=2))
    assert code == EXIT_OK
    assert report['transversal'] == ["V2^2"]


def test_determinacy_command():
    code, report = run(Request("determinacy", k=3, germ="U1, V2 + W1"))
    assert code == EXIT_OK
    assert report['determinacy'] == 1


def test_pullback_command():
    code, report = run(Request("pullback", k=3, germ="V2 + W1"))
    assert code == EXIT_OK
    assert report['details']['target'] == ["U1", "V1", "W1", "W2"]


def test_pullback_transversality_is_input_error():
    code, report = run(Request("pullback", k=2, germ="W1 + V1^2"))
    assert code == EXIT_INPUT
    assert report['status'] == "error"
    assert "transverse" in report['details']['error']


def test_counterexample_command():
    code, report = run(Request("counterexample"))
    assert code == EXIT_OK
    assert report['codimension'] == 2
    assert report['normal_basis'] == ["(1, 0)", "(0, 1)"]


def test_vfields_command():
    code, report = run(Request("vfields", k=2))
    assert code == EXIT_OK
    labels = [field['label'] for field in report['details']['fields']]
    assert labels == ["euler", "F1_1", "F2_1", "F3_1"]
    assert report['details']['fields'][0]['components'] == "V1; 2*W1; 2*W2"


@pytest.mark.parametrize("request_args", [
    {'command': "codim", 'k': 3, 'germ': "U5"},
    {'command': "codim", 'k': 3, 'germ': "U1 +"},
    {'command': "codim", 'k': 3, 'germ': "U1 + 1"},
    {'command': "codim", 'k': 1, 'germ': "U1"},
    {'command': "codim", 'k': 3},
    {'command': "transversal", 'k': 3, 'germ': "U1"},
    {'command': "unknown", 'k': 3},
])
def test_input_errors(request_args):
    code, report = run(Request(**request_args))
    assert code == EXIT_INPUT
    assert report['status'] == "error"


def test_generic_field_context(tmp_path):
    fields = tmp_path / "fields.txt"
    fields.write_text("# coordinate fields\n1; 0\n0; 1\n", encoding="utf-8")
    code, report = run(Request("codim", germ="x^2 + y^2", vars="x,y", fields_file=str(fields)))
    assert code == EXIT_OK
    assert report['codimension'] == 1
    assert report['determinacy'] is None


def test_json_output_is_stable_and_parseable(capsys):
    argv = ["codim", "-k", "3", "-h", "U1 + V2^2", "--output", "json"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second

    report = json.loads(first)
    assert list(report) == ['command', 'k', 'germ', 'codimension', 'normal_basis', 'determinacy',
                            'stabilization_degree', 'transversal', 'status', 'details']
    space = minimal_crosscap(3).target_vars
    assert str(parse_poly(report['germ'], space)) == report['germ']
    assert [str(parse_poly(b, space)) for b in report['normal_basis']] == report['normal_basis']


def test_text_output(capsys):
    assert main(["transversal", "-k", "3", "-h", "U1", "-d", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Transversal: V2^2" in out


def test_input_error_exit_code(capsys):
    assert main(["codim", "-k", "3", "-h", "U5"]) == EXIT_INPUT
    assert "❌" in capsys.readouterr().out


def test_help_flag_is_long_only():
    parser = vk_tool.build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args(["codim", "--help"])

import json

from monocone.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_betti_verb(capsys):
    code, out, _ = run_cli(capsys, "betti", "--vars", "x,y,z", "--ideal", "x*y,y*z,z*x")
    assert code == 0
    assert "betti total: 1,3,2" in out
    assert "pd: 2" in out


def test_classify_verb(capsys):
    code, out, _ = run_cli(capsys, "classify", "--cone", "y >= 0 & x > 0")
    assert code == 0
    assert "tag: H" in out


def test_regseq_discrepancy_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "regseq", "--vars", "x,y,z,w", "--seq", "x*y,y*z")
    assert code == 0
    assert "oracle_regular: False" in out
    assert "pd_criterion: True" in out
    assert "star_condition: False" in out
    assert "discrepancy: True" in out


def test_parse_error_exit_two(capsys):
    code, out, err = run_cli(capsys, "betti", "--vars", "x,y", "--ideal", "x*q")
    assert code == 2
    assert "position" in err


def test_domain_error_exit_one(capsys):
    code, out, err = run_cli(capsys, "cd", "--vars", "x", "--ideal", "1")
    assert code == 1
    assert "ImproperIdeal" in err


def test_json_output_is_deterministic(capsys):
    code, out1, _ = run_cli(capsys, "--output", "json", "betti", "--vars", "x,y", "--ideal", "x^2,x*y")
    code2, out2, _ = run_cli(capsys, "--output", "json", "betti", "--vars", "x,y", "--ideal", "x^2,x*y")
    assert code == code2 == 0
    assert out1 == out2
    assert json.loads(out1) == {"pd": 2, "total": [1, 2, 1]}


def test_machine_output_reparses(capsys):
    code, out, _ = run_cli(
        capsys, "--output", "json", "lazard-resolve",
        "--betas", "(2,2,2,2|2);(3,1,3,1|3);(4,2,1,1|4)",
        "--support", '{"threshold": -1}',
    )
    assert code == 0
    doc = json.loads(out)
    # members re-parse under the sequence grammar
    from monocone.parsing import parse_finseq

    for member in doc["members"]:
        text = "(" + ",".join(member["prefix"]) + "|" + member["tail"] + ")"
        parse_finseq(text)


def test_paramseq_verb(capsys):
    code, out, _ = run_cli(capsys, "paramseq", "--vars", "x,y", "--seq", "x,y")
    assert code == 0
    assert "parameter_sequence: True" in out


def test_reject_pair_verb(capsys):
    code, out, _ = run_cli(capsys, "reject-pair", "--tag", "H2", "--f", "(-2,1)", "--g", "(0,3)")
    assert code == 0
    assert "certificate: (1, 1)" in out


def test_semigroup_check_verb(capsys):
    code, out, _ = run_cli(
        capsys,
        "semigroup-check",
        "--semigroup", '{"ambient_dim": 2, "generators": [[2,0],[3,0]]}',
        "--property", "normal",
    )
    assert code == 0
    assert '"value": false' in out


def test_direct_system_verb(capsys):
    code, out, _ = run_cli(
        capsys,
        "direct-system",
        "--points", "(1,0|1);(0,1|1)",
        "--support", '{"threshold": 1}',
        "--depth", "2",
    )
    assert code == 0
    assert "stage 1: 1 members" in out


def test_normalize_verb(capsys):
    code, out, _ = run_cli(capsys, "normalize", "--gens", "(1,0);(1,2)")
    assert code == 0
    assert "t: 2" in out


def test_bound_flag_threads_through(capsys):
    code, out, err = run_cli(
        capsys, "--bound", "0", "reject-pair", "--tag", "H", "--f", "(1,1)", "--g", "(2,1)"
    )
    assert code == 1
    assert "CertificateUnverified" in err

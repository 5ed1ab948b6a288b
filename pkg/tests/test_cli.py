import json

from qplanes.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    records = [json.loads(line) for line in out.splitlines()]
    return code, out, records


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_classify_quadrics_both(tmp_path, capsys):
    path = _write(tmp_path, "plane.txt", "x0^2\nx1^2\nx2^2\n")
    code, _, recs = _run(capsys, ["classify", path])
    assert code == 0
    assert recs[0]["verdict"] == "both"
    assert recs[0]["ok"] is True


def test_classify_cubic_input(tmp_path, capsys):
    path = _write(tmp_path, "cubic.txt",
                  "x0^2*x1 + x1^2*x2 + x2^2*x3 + x3^3  # the cubic\n"
                  "x0 + 2*x1\nx1 + 3*x2\nx2 + 5*x3\n")
    code, _, recs = _run(capsys, ["classify", path])
    assert code == 0
    assert recs[0]["pfaffian_zero"] is True
    assert recs[0]["jump_dim"] >= 3


def test_classify_generic_plane(tmp_path, capsys):
    path = _write(tmp_path, "generic.txt",
                  "x0^2 + 2*x1*x2 + 7*x3^2\n"
                  "x0*x1 + 3*x2^2 + x2*x3\n"
                  "x0*x3 + 5*x1^2 + 11*x1*x3\n")
    code, _, recs = _run(capsys, ["classify", path])
    assert code == 0
    assert recs[0]["verdict"] == "general"
    assert recs[0]["jump_dim"] == 0


def test_classify_malformed_input(tmp_path, capsys):
    path = _write(tmp_path, "bad.txt", "x0^2\nx1^^2\nx2^2\n")
    code, _, _ = _run(capsys, ["classify", path])
    assert code == 2


def test_classify_missing_file(capsys):
    code, _, _ = _run(capsys, ["classify", "/nonexistent/input.txt"])
    assert code == 2


def test_classify_wrong_form_count(tmp_path, capsys):
    path = _write(tmp_path, "two.txt", "x0^2\nx1^2\n")
    code, _, _ = _run(capsys, ["classify", path])
    assert code == 2


def test_usage_errors(capsys):
    assert main(["pencil", "--prime", "37"]) == 2  # field too small
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
    assert main(["verify", "--rationals"]) == 2  # battery needs a prime field
    capsys.readouterr()
    assert main(["gale", "--samples", "0"]) == 2
    capsys.readouterr()


def test_pencil_command(tmp_path, capsys):
    code, _, recs = _run(capsys, ["pencil", "--samples", "1", "--seed", "4"])
    assert code == 0
    assert recs[0]["degrees"] == [36, 2, 10]
    assert recs[0]["factorization_ok"] is True


def test_gale_command(capsys):
    code, _, recs = _run(capsys, ["gale", "--samples", "1", "--seed", "2"])
    assert code == 0
    rec = recs[0]
    assert rec["hf"] == [1, 4, 3]
    assert rec["chain_dims"] == [3, 5, 7]
    assert rec["segre_span"] == 3
    assert rec["pfaffian_zero"] is True and rec["jump_dim"] == 3


def test_cremona_command(capsys):
    code, _, recs = _run(capsys, ["cremona", "--seed", "1"])
    assert code == 0
    assert recs[0]["ce_type"] == [2, 3]
    assert recs[0]["ok"] is True


def test_byte_determinism(tmp_path, capsys):
    plane = _write(tmp_path, "plane.txt", "x0^2\nx1^2\nx2^2\n")
    for argv in (["classify", plane],
                 ["pencil", "--samples", "1", "--seed", "7"],
                 ["gale", "--samples", "1", "--seed", "7"],
                 ["cremona", "--seed", "7"]):
        _, out1, _ = _run(capsys, list(argv))
        _, out2, _ = _run(capsys, list(argv))
        assert out1 == out2, f"non-deterministic output for {argv}"


def test_verify_smoke(capsys):
    # tiny trial counts: this exercises plumbing, not the full battery
    code, _, recs = _run(capsys, ["verify", "--samples", "2", "--seed", "3"])
    assert code == 0
    assert len(recs) == 9
    assert all(r["ok"] for r in recs)
    assert sorted(r["criterion"] for r in recs) == list(range(1, 10))

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from branchrules.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def sig_rows(out):
    return [l for l in out.splitlines() if l.startswith("SIG ")]


@pytest.mark.parametrize(
    "argv,rows",
    [
        (["essential", "--algebra", "G2", "--weight", "1,0", "--order", "g2-default"], 7),
        (["essential", "--algebra", "A1", "--weight", "3"], 4),
        (["essential", "--algebra", "B3", "--weight", "0,0,1"], 8),
        (["branch", "--pair", "G2:A2", "--weight", "0,1"], 3),
        (["branch", "--pair", "G2:A2", "--weight", "0,0"], 1),
        (["branch", "--pair", "B3:G2", "--weight", "1,0,0"], 1),
    ],
)
def test_row_counts(capsys, argv, rows):
    code, out = run(capsys, *argv, "--format", "lines")
    assert code == 0
    assert len(sig_rows(out)) == rows


def test_branch_g2_second_fundamental_rows(capsys):
    _, out = run(capsys, "branch", "--pair", "G2:A2", "--weight", "0,1", "--format", "lines")
    assert sig_rows(out) == [
        "SIG λ=0,1 p=0,0,0,0,0,0 hw'=1,1",
        "SIG λ=0,1 p=0,0,0,1,0,0 hw'=0,1",
        "SIG λ=0,1 p=0,0,1,0,0,0 hw'=1,0",
    ]


def test_table_format(capsys):
    code, out = run(capsys, "branch", "--pair", "G2:A2", "--weight", "1,0")
    assert code == 0
    assert out.splitlines()[0].split() == ["#", "λ", "p", "λ'"]


def test_relations_g2(capsys):
    code, out = run(capsys, "relations", "--pair", "G2:A2", "--format", "lines")
    assert code == 0
    assert [l for l in out.splitlines() if l.startswith("REL")] == ["REL 0,1,0,0,1,0 = 0,0,1,1,0,0"]
    code, out = run(capsys, "relations", "--pair", "G2:A2")
    assert "s2 + s5 = s3 + s4" in out


def test_discover_then_relations_from_file(capsys, tmp_path):
    code, out = run(capsys, "discover", "--pair", "B3:G2", "--format", "lines")
    assert code == 0 and len(sig_rows(out)) == 7
    f = tmp_path / "gens.txt"
    f.write_text(out)
    code, out2 = run(capsys, "relations", "--pair", "B3:G2", "--generators", str(f), "--format", "lines")
    assert code == 0
    rels = [l for l in out2.splitlines() if l.startswith("REL")]
    assert rels == ["REL 1,1,0,0,1,0,0 = 0,0,0,1,0,0,1"]


def test_machine_output_is_deterministic(capsys):
    argv = ["discover", "--pair", "G2:A2", "--format", "lines"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_exit_codes(capsys):
    assert run(capsys, "discover", "--pair", "B3:G2", "--iteration-cap", "1")[0] == 3
    assert run(capsys, "essential", "--algebra", "F4", "--weight", "1,1,1,1", "--dim-cap", "1000")[0] == 3
    assert run(capsys, "essential", "--algebra", "G2", "--weight", "1,-1")[0] == 1
    assert run(capsys, "branch", "--pair", "X9:Y2", "--weight", "1")[0] == 1
    assert run(capsys, "essential", "--algebra", "G2")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1


def test_counterexample_exit_code(capsys, tmp_path):
    # the five fundamental generators of B3 > G2 alone fail the certificate
    _, out = run(capsys, "discover", "--pair", "B3:G2", "--format", "lines")
    f = tmp_path / "gens.txt"
    f.write_text("\n".join(sig_rows(out)[:5]))
    code, out = run(capsys, "discover", "--pair", "B3:G2", "--generators", str(f), "--degree-bound", "2", "--format", "lines")
    assert code == 2
    assert "# failing: (1,1,0) (1,0,1)" in out.splitlines()
    f.write_text("\n".join(sig_rows(out)[:5]) + "\n" + "\n".join(sig_rows(run(capsys, "discover", "--pair", "B3:G2", "--format", "lines")[1])[5:]))
    assert run(capsys, "discover", "--pair", "B3:G2", "--generators", str(f))[0] == 0


def test_config_file_overrides_flags(capsys, tmp_path):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"pair": "G2:A2", "weight": [[0, 1]], "format": "lines"}))
    code, out = run(capsys, "branch", "--pair", "B3:G2", "--weight", "1,0,0", "--config", str(cfg))
    assert code == 0 and len(sig_rows(out)) == 3
    cfg.write_text(json.dumps({"no-such-flag": 1}))
    assert run(capsys, "branch", "--config", str(cfg))[0] == 1


def test_inline_order_and_algebra_descriptors(capsys):
    order = json.dumps({"n": 1, "stages": []})
    code, out = run(capsys, "essential", "--algebra", '{"series": "A", "rank": 1}', "--order", order, "--weight", "2", "--format", "lines")
    assert code == 0 and len(sig_rows(out)) == 3
    bad = json.dumps({"n": 3, "stages": []})
    assert run(capsys, "essential", "--algebra", "A1", "--order", bad, "--weight", "2")[0] == 1


def test_verify_paper_small(capsys):
    code, out = run(capsys, "verify-paper", "g2-a2", "--format", "lines")
    assert code == 0
    assert out.splitlines()[-1] == "PASS g2-a2"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "branchrules", "branch", "--pair", "G2:A2", "--weight", "0,0", "--format", "lines"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "SIG λ=0,0 p=0,0,0,0,0,0 hw'=0,0"

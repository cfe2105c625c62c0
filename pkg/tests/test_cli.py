import json

import pytest

from g2daha import cli
from g2daha.psi import PsiTable
from g2daha.xring import XPolynomial


def run(capsys, *argv):
    code = cli.run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_psi_json(capsys):
    code, out, _ = run(capsys, "psi", "--j", "1", "1", "0")
    assert code == 0
    data = json.loads(out)
    assert data["j"] == [1, 1, 0]
    assert set(tuple(e) for e in XPolynomial.from_json(data["poly"]).terms) == {(1, 0, 0), (-1, 0, 0)}


def test_psi_latex_groups_orbits(capsys):
    code, out, _ = run(capsys, "psi", "--j", "1", "1", "2", "--format", "latex")
    assert code == 0
    assert "(x_{13} + x_{13}^{-1})(x_{23} + x_{23}^{-1})" in out
    assert "x_{12}^{-1}" in out


def test_psi_non_admissible(capsys):
    code, out, err = run(capsys, "psi", "--j", "1", "0", "0", "--format", "latex")
    assert code == 0 and out.strip() == "0" and "not admissible" in err


def test_table(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, _, _ = run(capsys, "table", "--max-level", "4", "--out", str(path))
    assert code == 0
    tab = PsiTable.from_json(json.loads(path.read_text()))
    assert len(tab.triples()) == 10


def test_certificate_shape(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--only", "5a", "qserre-aba")
    assert code == 0
    cert = json.loads(out)
    assert cert["tool_version"] and cert["overall"] is True
    ids = [r["check_id"] for r in cert["results"]]
    assert ids == sorted(ids) == ["relations.aa-commute", "relations.qserre-aba"]
    for r in cert["results"]:
        assert {"check_id", "paper_ref", "guarantee", "holds", "wall_time_ms"} <= set(r)
        assert r["guarantee"] == "proof-in-F"
    assert "seed" in cert["parameters"] and "term_budget" in cert["parameters"]


def test_certificate_records_resolutions(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, _, _ = run(capsys, "verify", "pieri", "--max-level", "4", "--out", str(path))
    cert = json.loads(path.read_text())
    assert code == 0
    assert any("Pieri" in a["question"] for a in cert["resolved_ambiguities"])


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run_command(["verify", "nonsense"])
    assert exc.value.code == 2


def test_failure_exit_code(capsys, monkeypatch):
    def failing(rn):
        rn.run("controls.fake", "always false", "none", lambda: False)

    monkeypatch.setitem(cli.GROUPS, "controls", failing)
    code, out, err = run(capsys, "verify", "controls")
    assert code == 1
    assert "controls.fake" in err
    assert json.loads(out)["overall"] is False


def test_controls_group(capsys):
    code, out, _ = run(capsys, "verify", "controls")
    assert code == 0
    assert len(json.loads(out)["results"]) >= 3


def test_env_override(monkeypatch):
    monkeypatch.setenv("G2DAHA_MAX_LEVEL", "6")
    assert cli.Config.from_env().max_level == 6
    assert cli.Config.from_env(max_level=4).max_level == 4


def test_symmetric_latex_zero():
    assert cli.symmetric_latex(XPolynomial()) == "0"

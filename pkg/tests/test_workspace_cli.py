import copy
import json
from pathlib import Path

import pytest

from relhom import cli
from relhom.workspace import (WorkspaceError, builtin_workspace, dumps, from_dict,
                              load_workspace, open_workspace, save)

FIXTURES = Path(__file__).resolve().parent.parent / "workspaces"


@pytest.fixture
def a2_data():
    return json.loads((FIXTURES / "a2.json").read_text())


@pytest.fixture
def a3_data():
    return json.loads((FIXTURES / "a3rad2.json").read_text())


def reason(data):
    with pytest.raises(WorkspaceError) as exc:
        from_dict(data)
    return exc.value


@pytest.mark.parametrize("name", ["kx2.json", "a2.json", "a3rad2.json"])
def test_fixture_round_trip_is_byte_identical(name, tmp_path):
    path = FIXTURES / name
    ws = load_workspace(path)
    out = tmp_path / name
    save(ws, out)
    assert out.read_bytes() == path.read_bytes()


def test_kx2_fixture_corpus():
    ws = load_workspace(FIXTURES / "kx2.json")
    assert [m.name for m in ws.corpus] == ["S", "P1"]
    assert ws.algebra.flags["self_injective"]
    assert "gproj" in ws.pairs


def test_custom_quiver_fixture():
    ws = load_workspace(FIXTURES / "a3rad2.json")
    assert ws.module("M12").dims == (1, 1, 0)
    assert {"proj", "inj", "all", "nonhered"} <= set(ws.subcategories)
    assert ws.pair("classical2").x is ws.sub("proj")


def test_builtin_catalog_flags():
    assert builtin_workspace("a2").algebra.flags["gldim"] == 1
    assert builtin_workspace("semisimple2").algebra.flags["gldim"] == 0
    assert builtin_workspace("kx2").algebra.flags["gldim"] is None


def test_rejects_non_intertwining_morphism(a2_data):
    bad = copy.deepcopy(a2_data)
    bad["morphisms"]["d"] = {"source": "P1", "target": "P1", "blocks": [[[1]], [[0]]]}
    err = reason(bad)
    assert err.location == "morphisms.d"
    assert "arrow 'a'" in str(err) and "vertex 2" in str(err)


def test_rejects_relation_violation(a3_data):
    bad = copy.deepcopy(a3_data)
    bad["modules"]["M123"] = {"dims": [1, 1, 1], "arrows": {"a": [[1]], "b": [[1]]}}
    err = reason(bad)
    assert err.location == "modules.M123"
    assert "violates relation 0" in str(err) and "M123" in str(err)


def test_rejects_bad_differential(a2_data):
    bad = copy.deepcopy(a2_data)
    bad["morphisms"]["e"] = {"source": "P1", "target": "S1", "blocks": [[[1]], [[]]]}
    bad["complexes"]["broken"] = {"lo": 0, "terms": ["P2", "P1", "S1"], "differentials": ["d", "e"]}
    bad["morphisms"]["d"]["blocks"] = [[[]], [[1]]]
    ws = from_dict(bad)  # composite P2 -> P1 -> S1 is zero
    assert ws.complex("broken").width() == 3
    bad["complexes"]["broken"]["terms"] = ["P1", "P1", "S1"]
    assert reason(bad).location.startswith("complexes.broken")


@pytest.mark.parametrize("mutate,location", [
    (lambda d: d.update(schema="relhom/0"), "schema"),
    (lambda d: d.update(extra={}), "extra"),
    (lambda d: d["corpus"].append("Q9"), "corpus[3]"),
    (lambda d: d["morphisms"]["d"].update(source="X"), "morphisms.d.source"),
    (lambda d: d["complexes"]["presentation"].update(differentials=["nope"]),
     "complexes.presentation.differentials[0]"),
    (lambda d: d.update(settings={"p": 3}), "settings.p"),
    (lambda d: d.update(settings={"colour": 1}), "settings.colour"),
    (lambda d: d.update(algebra={"builtin": "e8"}), "algebra.builtin"),
])
def test_rejections_name_locations(a2_data, mutate, location):
    bad = copy.deepcopy(a2_data)
    mutate(bad)
    assert reason(bad).location == location


def test_dangling_references(a3_data):
    bad = copy.deepcopy(a3_data)
    bad["pairs"]["classical2"]["y"] = "ghost"
    assert reason(bad).location == "pairs.classical2.y"
    bad = copy.deepcopy(a3_data)
    bad["cotorsion"]["proj_all"]["pair"] = "ghost"
    assert reason(bad).location == "cotorsion.proj_all.pair"
    bad = copy.deepcopy(a3_data)
    bad["subcategories"]["all"]["generators"].append("M13")
    assert reason(bad).location == "subcategories.all.generators[5]"


def test_invalid_json_file(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{\"schema\": ")
    with pytest.raises(WorkspaceError, match="invalid JSON"):
        load_workspace(p)
    with pytest.raises(WorkspaceError, match="no such file"):
        open_workspace(str(tmp_path / "missing.json"))


def test_extend_corpus_records_provenance():
    ws = builtin_workspace("kx2")
    alg = ws.algebra
    same = ws.extend_corpus(alg.simple(0), "test")
    assert same.name == "S" and len(ws.corpus) == 2
    doubled = alg.module([3], [[[0, 0, 0], [1, 0, 0], [0, 0, 0]]])
    new = ws.extend_corpus(doubled, "test syzygy")
    assert new.name == "K1" and ws.provenance["K1"] == "test syzygy"
    again = from_dict(json.loads(dumps(ws)))
    assert again.provenance["K1"] == "test syzygy"
    assert again.module("K1").dims == (3,)


# -- command line -----------------------------------------------------------------


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_examples(capsys):
    code, out, _ = run_cli(capsys, "gorenstein", "-w", "kx2")
    assert code == 0 and "Gorenstein: yes, pd D(A) = 0" in out
    code, out, _ = run_cli(capsys, "singularity", "-w", "kx2", "--pair", "gproj")
    assert code == 0 and "trivial" in out
    code, out, _ = run_cli(capsys, "resdim", "S1", "-w", "a3rad2", "--sub", "proj")
    assert code == 0 and out.strip().endswith("= 2")


def test_cli_singularity_proj_reports_period(capsys, tmp_path):
    out_json = tmp_path / "r.json"
    code, out, _ = run_cli(capsys, "singularity", "-w", "kx2", "--pair", "proj",
                           "--json", str(out_json))
    assert code == 0 and "nontrivial-witness" in out
    report = json.loads(out_json.read_text())
    assert report["verdicts"]["singularity"]["unresolved"]["S"] == [0, 1]


def test_cli_exit_codes(capsys):
    assert run_cli(capsys, "frobnicate", "-w", "kx2")[0] == 4
    assert run_cli(capsys, "resdim", "Q7", "-w", "kx2")[0] == 4
    assert run_cli(capsys, "ext-table", "S", "S", "-w", "kx2", "--pair", "ghost")[0] == 4
    assert run_cli(capsys, "resdim", "S")[0] == 4
    assert run_cli(capsys, "ext-table", "S", "S", "-w", "kx2", "--bogus")[0] == 4
    code, _, err = run_cli(capsys, "lift", "S", "-w", "kx2", "--cap", "3")
    assert code == 3 and "unsupported" in err


def test_cli_counterexample_exit(capsys, tmp_path, a2_data):
    data = copy.deepcopy(a2_data)
    data["subcategories"] = {"x": {"generators": ["P1"]}, "y": {"generators": ["I2"]}}
    data["pairs"] = {"bad": {"x": "x", "y": "y"}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run_cli(capsys, "check-balanced", "-w", str(path), "--pair", "bad",
                           "--samples", "4")
    assert code == 2


def test_cli_lift_named_complex(capsys):
    code, out, _ = run_cli(capsys, "lift", "presentation", "-w", str(FIXTURES / "a2.json"))
    assert code == 0 and "cone certified True" in out


def test_cli_resdim_extends_corpus(capsys, tmp_path):
    saved = tmp_path / "ws.json"
    code, _, _ = run_cli(capsys, "resdim", "S1", "-w", "a3rad2", "--sub", "proj",
                         "--save", str(saved))
    assert code == 0
    ws = load_workspace(saved)
    added = [m.name for m in ws.corpus if m.name in ws.provenance]
    assert all("resdim" in ws.provenance[n] or "default corpus" in ws.provenance[n]
               for n in added)


def strip_timings(text):
    data = json.loads(text)
    data.pop("timings")
    return data


@pytest.mark.parametrize("argv", [
    ["check-balanced", "-w", "a2", "--samples", "8"],
    ["hereditary", "-w", "nak_cyc2"],
    ["complete", "S", "-w", "kx2", "--spec", "proj_all"],
])
def test_reports_are_deterministic(capsys, tmp_path, argv):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert cli.main(argv + ["--seed", "3", "--json", str(path)]) == 0
        outs.append(strip_timings(path.read_text()))
    capsys.readouterr()
    assert outs[0] == outs[1]
    assert outs[0]["settings"]["seed"] == 3

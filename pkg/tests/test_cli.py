import io as _io
import json
import subprocess
import sys

import pytest

import golden
from weakcocycles.cli import run
from weakcocycles.order import dot_edges


def call(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", _io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(monkeypatch, capsys):
    def go(*argv, stdin=""):
        return call(list(argv), stdin, monkeypatch, capsys)
    return go


def parse_table(text):
    rows = [line.split() for line in text.strip().splitlines()]
    return rows[0], {r[0]: r[1:] for r in rows[1:]}


def pi_exp(cell):
    if cell == "1":
        return 0
    if cell == "π":
        return 1
    return int(cell[2:].strip("{}"))


def r1_doc(cli):
    _, g, _ = cli("group", "make", "cyclic", "10")
    _, r, _ = cli("r", "from-gens", "--gens", "1,6", stdin=g)
    _, r1, _ = cli("r", "transform", "--op", "bump", "--at", "1", stdin=r)
    return r1


def rhat_doc(cli, tmp_path):
    _, g, _ = cli("group", "make", "dihedral", "8")
    path = tmp_path / "d8.json"
    path.write_text(g, encoding="utf-8")
    _, q, _ = cli("group", "quotient", "--normal", "a^2", "--suffix", "H", stdin=g)
    _, rq, _ = cli("r", "from-gens", "--gens", "aH,sH", stdin=q)
    code, rh, _ = cli("r", "transform", "--op", "inflate", "--group", str(path),
                      "--normal", "a^2", stdin=rq)
    assert code == 0
    return rh, json.loads(rq)


def test_eps_table_pipeline_reproduces_r1_table(cli):
    r1 = r1_doc(cli)
    assert json.loads(r1)["values"] == list(golden.R1)
    code, out, _ = cli("cocycle", "eps-table", stdin=r1)
    assert code == 0
    header, rows = parse_table(out)
    assert header[1:] == [str(i) for i in range(10)]
    assert [[pi_exp(c) for c in rows[str(i)]] for i in range(10)] == [
        list(row) for row in golden.EPS_R1]
    assert "π^{10}" in out
    _, again, _ = cli("cocycle", "eps-table", stdin=r1)
    assert again == out
    _, raw, _ = cli("cocycle", "eps-table", "--raw", stdin=r1)
    assert parse_table(raw)[1]["5"][5] == "10"


def test_validate_zero_function(cli):
    _, g, _ = cli("group", "make", "cyclic", "4")
    doc = json.dumps({"group": json.loads(g), "values": [0, 0, 0, 0]})
    code, out, err = cli("r", "validate", stdin=doc)
    assert code == 0 and json.loads(out)["values"] == [0, 0, 0, 0]
    assert "N1 = {}" in err


def test_validate_failure_exit_code(cli):
    _, g, _ = cli("group", "make", "cyclic", "4")
    doc = json.dumps({"group": json.loads(g), "values": [0, 1, 3, 1]})
    code, _, err = cli("r", "validate", stdin=doc)
    assert code == 1 and "NotSubadditive" in err and "witness" in err


def test_deflate_without_inertia_fails(cli):
    _, e, _ = cli("cocycle", "er", stdin=r1_doc(cli))
    code, out, err = cli("cocycle", "deflate", "--normal", "5", stdin=e)
    assert code == 1 and out == ""
    assert "NotInInertialGroup" in err and "(5,)" in err


def test_input_errors_exit_two(cli):
    assert cli("r", "validate", stdin="{oops")[0] == 2
    assert cli("cocycle", "er", stdin=json.dumps({"values": [0]}))[0] == 2
    _, g, _ = cli("group", "make", "cyclic", "3")
    assert cli("r", "from-gens", "--gens", "7", stdin=g)[0] == 2
    with pytest.raises(SystemExit) as info:
        run(["group", "make", "quaternion", "8"])
    assert info.value.code == 2


def test_group_verify(cli):
    code, _, err = cli("group", "verify", stdin=json.dumps({"table": [[0, 1], [0, 1]]}))
    assert code == 1 and "column-not-permutation" in err
    _, g, _ = cli("group", "make", "symmetric", "3")
    assert cli("group", "verify", stdin=g)[0] == 0


def test_d8_chain(cli, tmp_path):
    rh, rq = rhat_doc(cli, tmp_path)
    assert rq["values"] == list(golden.D8_QUOTIENT_R)
    assert json.loads(rh)["values"] == list(golden.D8_RHAT)
    _, e, _ = cli("cocycle", "er", stdin=rh)
    code, eps, _ = cli("cocycle", "deflate", "--normal", "a^2", stdin=e)
    assert code == 0 and json.loads(eps)["entries"] == [list(r) for r in golden.D8_EPS_QUOTIENT]
    path = tmp_path / "d8.json"
    code, back, _ = cli("cocycle", "inflate", "--group", str(path), "--normal", "a^2", stdin=eps)
    assert code == 0 and json.loads(back)["entries"] == json.loads(e)["entries"]
    _, dot, _ = cli("poset", "dot", "--mode", "expanded", stdin=e)
    assert dot_edges(dot) == golden.D8_EXPANDED_EDGES
    _, p, _ = cli("poset", "from-r", stdin=rh)
    _, dot, _ = cli("poset", "dot", stdin=p)
    assert dot_edges(dot) == golden.D8_COSET_EDGES


def test_valued_cocycle_commands(cli, tmp_path):
    r1 = r1_doc(cli)
    _, b, _ = cli("cocycle", "br", stdin=r1)
    assert cli("cocycle", "verify", "--level", "strict", stdin=b)[0] == 0
    assert cli("cocycle", "verify", "--level", "strict", "--unramified", stdin=b)[0] == 0
    c_path = tmp_path / "c.json"
    code, r, _ = cli("cocycle", "decompose", "--c-output", str(c_path), stdin=b)
    assert code == 0 and json.loads(r)["values"] == list(golden.R1)
    c = json.loads(c_path.read_text(encoding="utf-8"))
    assert all(x["exp"] == 0 for row in c["entries"] for x in row)
    assert cli("cocycle", "hereditary", stdin=b)[1].strip() == "false"
    _, rf, _ = cli("cocycle", "rf", stdin=b)
    assert json.loads(rf)["values"] == [0, 6, 5, 5, 5, 10, 5, 5, 5, 6]
    code, h, _ = cli("cocycle", "partner", "--r", "half", stdin=b)
    assert code == 0
    assert cli("cocycle", "hereditary", stdin=h)[1].strip() == "true"
    code, h_rf, _ = cli("cocycle", "partner", "--r", "rf", stdin=b)
    assert code == 0 and cli("cocycle", "verify", stdin=h_rf)[0] == 0


def test_broken_cocycle_fails_verification(cli):
    _, b, _ = cli("cocycle", "br", stdin=r1_doc(cli))
    doc = json.loads(b)
    doc["entries"][2][3]["exp"] += 1
    code, _, err = cli("cocycle", "verify", stdin=json.dumps(doc))
    assert code == 1 and "witness" in err


def test_transforms_and_enumerate(cli):
    r1 = r1_doc(cli)
    for op, expected in (("halve", golden.R1_HALF), ("evenize", golden.R1_EVEN)):
        code, out, _ = cli("r", "transform", "--op", op, stdin=r1)
        assert code == 0 and json.loads(out)["values"] == list(expected)
    code, _, err = cli("r", "transform", "--op", "bump", "--at", "2", stdin=r1)
    assert code == 1 and "NotInN1" in err
    _, g, _ = cli("group", "make", "cyclic", "3")
    code, out, _ = cli("r", "enumerate", "--max", "1", stdin=g)
    assert json.loads(out)["functions"] == [[0, 0, 0], [0, 1, 1]]


def test_every_producer_feeds_its_consumers(cli, tmp_path):
    rh, _ = rhat_doc(cli, tmp_path)
    _, e, _ = cli("cocycle", "er", stdin=rh)
    _, b, _ = cli("cocycle", "br", stdin=rh)
    _, p, _ = cli("poset", "from-e", stdin=e)
    for argv, doc in [(("cocycle", "er"), rh), (("cocycle", "br"), rh), (("poset", "from-r"), rh),
                      (("poset", "dot"), rh), (("cocycle", "eps-table"), rh),
                      (("cocycle", "verify"), e), (("poset", "from-e"), e),
                      (("cocycle", "eps-table"), e), (("poset", "dot"), e),
                      (("cocycle", "verify"), b), (("cocycle", "rf"), b),
                      (("cocycle", "eps-table"), b), (("cocycle", "decompose"), b),
                      (("poset", "dot"), p), (("r", "validate"), rh)]:
        code, out, err = cli(*argv, stdin=doc)
        assert code == 0, (argv, err)
    _, rf, _ = cli("cocycle", "rf", stdin=b)
    assert cli("r", "transform", "--op", "halve", stdin=rf)[0] == 0


def test_output_flag(cli, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = cli("group", "make", "cyclic", "5", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["name"] == "C5"
    code, out, _ = cli("r", "from-gens", str(target), "--gens", "1")
    assert json.loads(out)["values"] == [0, 1, 2, 3, 4]


def test_check_all_small(cli):
    code, out, _ = cli("check", "all", "--preset", "cyclic:3", "--max", "2")
    assert code == 0
    assert out.count("PASS") == len(out.strip().splitlines())


def test_check_all_reports_failure(cli, monkeypatch):
    from weakcocycles import cli as cli_mod
    from weakcocycles.checks import CheckResult

    def fake(G, **kw):
        bad = CheckResult("deliberately broken")
        bad.fail((1, 2))
        return [CheckResult("fine"), bad]

    monkeypatch.setattr(cli_mod, "run_property_suite", fake)
    code, out, err = cli("check", "all", "--preset", "cyclic:2")
    assert code == 1 and "FAIL  deliberately broken" in out and "witness" in err


def test_module_entry_point_pipeline():
    make = subprocess.run([sys.executable, "-m", "weakcocycles", "group", "make", "cyclic", "10"],
                          capture_output=True, check=True)
    gens = subprocess.run([sys.executable, "-m", "weakcocycles", "r", "from-gens", "--gens", "1,6"],
                          input=make.stdout, capture_output=True, check=True)
    bumped = subprocess.run([sys.executable, "-m", "weakcocycles", "r", "transform", "--op",
                             "bump", "--at", "1"], input=gens.stdout, capture_output=True,
                            check=True)
    table = subprocess.run([sys.executable, "-m", "weakcocycles", "cocycle", "eps-table"],
                           input=bumped.stdout, capture_output=True, check=True)
    text = table.stdout.decode("utf-8")
    assert text.splitlines()[6].split()[6] == "π^{10}"

import io
import json
import subprocess
import sys
from fractions import Fraction

from cblab import families
from cblab.chern import c1_fvector
from cblab.cli import decode_class, encode, parse_rational, run

SCROLL = json.dumps(families.scroll_m05().to_json())


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_rank_json():
    code, out = call("rank", SCROLL)
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == "5"
    assert data["spec"]["weights"][4] == [4, 0]


def test_rank_seq_csv():
    code, out = call("--format", "csv", "rank-seq", SCROLL, "--max-m", "3")
    assert code == 0
    assert out.splitlines() == ["m,rank", "0,1", "1,5", "2,12", "3,22"]


def test_flags_after_subcommand():
    code, out = call("rank", SCROLL, "--format", "text")
    assert code == 0 and "rank: 5" in out


def test_spec_from_file(tmp_path):
    p = tmp_path / "spec.json"
    p.write_text(SCROLL)
    assert json.loads(call("rank", str(p))[1])["rank"] == "5"


def test_fuse_and_deg04():
    spec = '{"r":1,"level":2,"genus":0,"weights":[[1,0],[1,0],[2,0]]}'
    assert json.loads(call("fuse", spec)[1])["N"] == "1"
    spec4 = '{"r":1,"level":1,"genus":0,"weights":[[1,0],[1,0],[1,0],[1,0]]}'
    assert json.loads(call("deg04", spec4)[1])["deg"] == "1"


def test_c1_basis():
    code, out = call("c1", SCROLL, "--basis5")
    assert json.loads(out)["basis"] == {"d13": "0", "d14": "2", "d24": "0", "d25": "2", "d35": "2"}


def test_c1_fvector_round_trip():
    code, out = call("c1", SCROLL)
    fv = json.loads(out)["fvector"]
    assert decode_class(fv) == c1_fvector(families.scroll_m05())


def test_classify_values():
    code, out = call("classify", "--values", "1,5,12,22,35")
    data = json.loads(out)
    assert (data["d"], data["D"], data["Delta"]) == ("2", "3", "0")


def test_identity_auto_and_closed():
    code, out = call("identity", SCROLL, "--m", "4")
    assert json.loads(out)["coefficients"]["4"] == ["10", "-10", "5"]
    code, out = call("identity", "--kind", "quadric", "--d", "3", "--m", "3")
    assert code == 0
    vals = json.loads(out)["coefficients"]["3"]
    assert all(parse_rational(v) == Fraction(v) for v in vals)


def test_verify_spec_holds():
    code, out = call("verify", SCROLL, "--m", "4")
    assert code == 0
    assert json.loads(out)["results"][0]["holds"] is True


def test_verify_table_counterexample_exit_code():
    code, out = call("verify", "--table", "coble-cubic", "--kind", "coble-cubic", "--m", "5")
    assert code == 1
    assert "counterexample" in out


def test_reproduce_counterexample_marker():
    code, out = call("reproduce", "goodbad")
    assert code == 1
    data = json.loads(out)
    assert data["status"] == "counterexample" and data["marker"] == "counterexample"


def test_reproduce_mismatch_marker():
    code, out = call("reproduce", "m2-cubic")
    assert code == 1
    assert "MISMATCH" in json.loads(out)["marker"]


def test_reproduce_ok():
    code, out = call("reproduce", "m05-scroll")
    assert code == 0
    assert json.loads(out)["status"] == "reproduced"


def test_anomaly_csv():
    code, out = call("--format", "csv", "anomaly-m2", "--m", "2", "3")
    assert out.splitlines() == ["m,alpha,beta", "2,0,1", "3,0,4"]


def test_hypotheses_report():
    code, out = call("hypotheses", json.dumps(families.m2_level1().to_json()))
    assert code == 0
    assert json.loads(out)["verdict"] == "fail: Delta_1,{}: socle degree 2 != 1"


def test_errors_exit_two(capsys):
    assert call("rank", "{broken")[0] == 2
    assert call("rank", "/no/such/file.json")[0] == 2
    assert call("classify", "--values", "1,4,10,20")[0] == 2
    assert call("reproduce", "nope")[0] == 2
    assert call("bogus")[0] == 2
    bad_level = '{"r":1,"level":1,"genus":0,"weights":[[3,0],[1,0],[1,0]]}'
    assert call("fuse", bad_level)[0] == 2


def test_cache_command(tmp_path):
    path = tmp_path / "c.jsonl"
    spec = '{"r":2,"level":3,"genus":0,"weights":[[1,0,0],[1,1,0],[2,1,0]]}'
    assert call("--cache", str(path), "fuse", spec)[0] == 0
    code, out = call("cache", str(path), "--compact")
    assert json.loads(out)["records"] == "1"


def test_encode_rationals():
    assert encode({"x": Fraction(3, 6), "y": 10 ** 30, "b": True}) == \
        {"x": "1/2", "y": "1" + "0" * 30, "b": True}


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "cblab", "rank", SCROLL], capture_output=True,
                         text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["rank"] == "5"


def test_env_cache(tmp_path, monkeypatch):
    from cblab import fusion
    path = tmp_path / "env.jsonl"
    monkeypatch.setenv("CBLAB_CACHE", str(path))
    monkeypatch.setattr(fusion, "_default", [])
    spec = '{"r":2,"level":2,"genus":0,"weights":[[1,0,0],[1,0,0],[1,1,0]]}'
    assert call("fuse", spec)[0] == 0
    assert path.read_text().strip()
    monkeypatch.setattr(fusion, "_default", [])


def test_small_class_round_trip():
    from cblab.cli import encode_class
    from cblab.picard import DivisorClassSmall
    c = DivisorClassSmall("M21", (Fraction(9, 2), 3, Fraction(-5, 4), Fraction(-3, 2)))
    assert decode_class(json.loads(json.dumps(encode_class(c)))) == c


def test_reproduce_all_independent_of_jobs():
    c1, out1 = call("reproduce", "all")
    c4, out4 = call("--jobs", "4", "reproduce", "all")
    assert c1 == c4 == 1
    assert out1 == out4
    ids = [case["id"] for case in json.loads(out1)["cases"]]
    assert ids == sorted(ids)

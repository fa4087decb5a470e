import json

import pytest

from melonlab import cli, core


def run(argv, capsys=None):
    code = cli.main(argv)
    return code


def test_lemma2_json(capsys):
    assert cli.main(["lemma2", "--dim", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lambda_delta"] == "2/9"
    assert out["dim"] == 2


def test_usage_errors(capsys):
    assert cli.main(["series", "--target", "nope"]) == 1
    assert cli.main(["walk-exact"]) == 1
    with pytest.raises(SystemExit):
        cli.main(["no-such-verb"])


def test_sample_deterministic_and_parsable(tmp_path):
    out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
    args = ["sample", "--dim", "3", "--size", "6", "--count", "4",
            "--seed", "11"]
    assert cli.main(args + ["--out", str(out1)]) == 0
    assert cli.main(args + ["--out", str(out2)]) == 0
    lines1 = [l for l in out1.read_text().splitlines() if not l.startswith("#")]
    lines2 = [l for l in out2.read_text().splitlines() if not l.startswith("#")]
    assert lines1 == lines2 and len(lines1) == 4
    for line in lines1:
        t = core.parse_tree(line)
        assert t.dim == 3 and t.n == 6


def test_sample_simple_flag(tmp_path):
    out = tmp_path / "s.txt"
    assert cli.main(["sample", "--dim", "2", "--size", "9", "--count", "5",
                     "--seed", "2", "--simple", "--out", str(out)]) == 0
    for line in out.read_text().splitlines():
        if not line.startswith("#"):
            assert core.parse_tree(line).is_simple()


def test_depth_verb_worked_word(tmp_path):
    words = tmp_path / "w.txt"
    words.write_text("0;10132120312\n")
    out = tmp_path / "d.csv"
    assert cli.main(["depth", "--input", str(words), "--out", str(out)]) == 0
    header, cols, row = out.read_text().splitlines()
    assert header.startswith("# config: ")
    json.loads(header[len("# config: "):])
    assert cols == "word,tree_depth,depth,stack_depth"
    word, td, d, sd = row.split(",")
    assert word == "0;10132120312" and d == "4" and td == "11"


def test_depth_verb_custom_alphabet(tmp_path):
    words = tmp_path / "w.txt"
    words.write_text("1;312312\n")
    out = tmp_path / "d.csv"
    assert cli.main(["depth", "--input", str(words), "--alphabet", "1,2,3",
                     "--out", str(out)]) == 0
    row = out.read_text().splitlines()[-1]
    assert row.split(",")[2] == "4"


def test_config_file_merging(tmp_path, capsys):
    cfgf = tmp_path / "c.json"
    cfgf.write_text(json.dumps({"dim": 3}))
    assert cli.main(["lemma2", "--config", str(cfgf)]) == 0
    assert json.loads(capsys.readouterr().out)["lambda_delta"] == "3/22"
    # explicit flag wins over file value
    assert cli.main(["lemma2", "--config", str(cfgf), "--dim", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["lambda_delta"] == "12/125"


def test_config_file_rejects_unknown_keys(tmp_path):
    cfgf = tmp_path / "c.json"
    cfgf.write_text(json.dumps({"bogus": 1}))
    assert cli.main(["lemma2", "--config", str(cfgf)]) == 1


def test_walk_exact_and_series_cross_check(tmp_path, capsys):
    trees = tmp_path / "t.txt"
    assert cli.main(["sample", "--dim", "2", "--size", "5", "--count", "1",
                     "--seed", "4", "--out", str(trees)]) == 0
    out = tmp_path / "w.csv"
    assert cli.main(["walk-exact", "--tree", str(trees), "--t-max", "10",
                     "--out", str(out)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["series_match"] is True
    rows = out.read_text().splitlines()
    assert rows[1] == "t,return_prob,transit_prob"
    assert rows[2] == "0,1,0"
    assert len(rows) == 13


def test_series_verb_exact_coefficients(tmp_path):
    out = tmp_path / "s.csv"
    assert cli.main(["series", "--dim", "2", "--order", "8",
                     "--target", "Hempty", "--out", str(out)]) == 0
    rows = [r.split(",") for r in out.read_text().splitlines()[2:]]
    got = [int(v) for _, v in rows]
    assert got == [1, 1, 2, 5, 14, 42, 132, 429, 1430]


def test_spectral_verb_small(tmp_path, capsys):
    out = tmp_path / "p.csv"
    assert cli.main(["spectral", "--size", "512", "--t-max", "128",
                     "--walkers", "8", "--graphs", "12", "--seed", "1",
                     "--out", str(out)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 512 and payload["ensemble"] == "general"
    rows = out.read_text().splitlines()
    assert rows[1] == "t,P,stderr"
    assert rows[2].startswith("0,1.0,")


def test_hausdorff_verb_small(tmp_path, capsys):
    out = tmp_path / "h.csv"
    assert cli.main(["hausdorff", "--sizes", "256,512,1024", "--reps", "30",
                     "--seed", "9", "--out", str(out)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert 0.3 < payload["exponent"] < 0.7
    assert payload["d_H"] == pytest.approx(1 / payload["exponent"])
    assert len(out.read_text().splitlines()) == 5

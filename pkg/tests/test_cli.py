"""Tests for the command-line interface: subcommands, config resolution,
and the exit-code contract (0 success, 1 validation, 2 I/O)."""

import io
import json

import pytest

from zhstance.cli import main

WHEN = "2021-02-01T12:00:00Z"

# every account mentions 香港, so its IDF is 0 in any full fit
ACCOUNT_TEXTS = {
    "b0": ("统一稳定 祖国发展 香港",),
    "b1": ("统一稳定 繁荣富强 香港",),
    "b2": ("统一稳定 复兴团结 香港",),
    "d0": ("民主自由 选举人权 香港",),
    "d1": ("民主自由 法治普选 香港",),
    "d2": ("民主自由 抗争罢工 香港",),
}


def write_jsonl(path, objs):
    path.write_text("\n".join(json.dumps(o, ensure_ascii=False) for o in objs) + "\n",
                    encoding="utf-8")


def corpus_file(tmp_path, name="corpus.jsonl"):
    lines = [{"label_set": ["Beijing", "Democracy"]}]
    for account_id, texts in ACCOUNT_TEXTS.items():
        label = "Beijing" if account_id.startswith("b") else "Democracy"
        lines.append({
            "account_id": account_id,
            "follower_count": 20000,
            "label": label,
            "tweets": [{"text": t, "timestamp": WHEN} for t in texts],
        })
    path = tmp_path / name
    write_jsonl(path, lines)
    return path


def queries_file(tmp_path):
    path = tmp_path / "queries.jsonl"
    write_jsonl(path, [
        {"account_id": "q_beijing", "follower_count": 5, "label": None,
         "tweets": [{"text": "统一富强 繁荣爱国", "timestamp": WHEN}]},
        {"account_id": "q_democracy", "follower_count": 5, "label": None,
         "tweets": [{"text": "民主抗争 普选罢工", "timestamp": WHEN}]},
    ])
    return path


RELAXED = ["--min-followers", "0", "--min-tweets", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_no_command_exits_1(self, capsys):
        code, _, err = run(capsys, )
        assert code == 1
        assert "error" in err

    def test_unknown_command_exits_1(self, capsys):
        code, _, _ = run(capsys, "bogus")
        assert code == 1

    def test_unknown_flag_exits_1(self, capsys):
        code, _, _ = run(capsys, "convert", "--bogus")
        assert code == 1

    def test_bad_choice_exits_1(self, capsys, tmp_path):
        code, _, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                         "--model", "svm")
        assert code == 1


class TestConvert:
    def test_stdin_lines(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("支持臺灣\n發展\n"))
        code, out, _ = run(capsys, "convert")
        assert code == 0
        assert out == "支持台湾\n发展\n"

    def test_custom_table(self, capsys, monkeypatch, tmp_path):
        table = tmp_path / "t.tsv"
        table.write_text("貓\t猫\n", encoding="utf-8")
        monkeypatch.setattr("sys.stdin", io.StringIO("貓發\n"))
        code, out, _ = run(capsys, "convert", "--convert-table", str(table))
        assert code == 0
        assert out == "猫發\n"  # only the custom mapping applies


class TestSegment:
    def lexicon(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("民主 10\n自由 8\n支持 5\n", encoding="utf-8")
        return path

    def test_requires_dict(self, capsys):
        code, _, _ = run(capsys, "segment")
        assert code == 1

    def test_segments_stdin(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setattr("sys.stdin", io.StringIO("支持民主自由 #民主 @x\n"))
        code, out, _ = run(capsys, "segment", "--dict", str(self.lexicon(tmp_path)))
        assert code == 0
        assert out == "支持 民主 自由 民主\n"

    def test_no_clean(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setattr("sys.stdin", io.StringIO("#民主\n"))
        code, out, _ = run(capsys, "segment", "--dict", str(self.lexicon(tmp_path)),
                           "--no-clean")
        assert code == 0
        assert out == "# 民主\n"

    def test_missing_dict_file_exits_2(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(""))
        code, _, _ = run(capsys, "segment", "--dict", "/nonexistent/lex.txt")
        assert code == 2


class TestVectorize:
    def test_jsonl_output(self, capsys, tmp_path):
        code, out, _ = run(capsys, "vectorize", "--corpus", str(corpus_file(tmp_path)),
                           *RELAXED)
        assert code == 0
        rows = [json.loads(line) for line in out.strip().split("\n")]
        assert [r["account_id"] for r in rows] == sorted(ACCOUNT_TEXTS)
        for row in rows:
            assert "香港" not in row["weights"]  # idf 0 terms never stored
        b0 = rows[0]["weights"]
        assert "统一" in b0 and "祖国" in b0

    def test_output_file(self, capsys, tmp_path):
        out_path = tmp_path / "vectors.jsonl"
        code, out, _ = run(capsys, "vectorize", "--corpus", str(corpus_file(tmp_path)),
                           *RELAXED, "--output", str(out_path))
        assert code == 0
        assert out == ""
        assert len(out_path.read_text(encoding="utf-8").strip().split("\n")) == 6


class TestClassify:
    def test_predictions(self, capsys, tmp_path):
        code, out, _ = run(capsys, "classify", "--corpus", str(corpus_file(tmp_path)),
                           "--queries", str(queries_file(tmp_path)), *RELAXED, "--k", "3")
        assert code == 0
        rows = [json.loads(line) for line in out.strip().split("\n")]
        by_id = {r["account_id"]: r for r in rows}
        assert by_id["q_beijing"]["predicted"] == "Beijing"
        assert by_id["q_democracy"]["predicted"] == "Democracy"
        assert by_id["q_beijing"]["label"] is None
        assert len(by_id["q_beijing"]["neighbors"]) == 3

    def test_queries_survive_window_trimming(self, capsys, tmp_path):
        # a query with only out-of-window tweets still gets classified
        stale = tmp_path / "stale.jsonl"
        write_jsonl(stale, [{
            "account_id": "q_old", "follower_count": 5, "label": None,
            "tweets": [{"text": "民主", "timestamp": "2019-01-01T00:00:00Z"}],
        }])
        code, out, _ = run(capsys, "classify", "--corpus", str(corpus_file(tmp_path)),
                           "--queries", str(stale), *RELAXED, "--k", "3")
        assert code == 0
        row = json.loads(out.strip())
        assert row["account_id"] == "q_old"
        assert row["predicted"] in ("Beijing", "Democracy")

    def test_no_labeled_train_exits_1(self, capsys, tmp_path):
        unlabeled = tmp_path / "unlabeled.jsonl"
        write_jsonl(unlabeled, [{
            "account_id": "u0", "follower_count": 20000, "label": None,
            "tweets": [{"text": "民主", "timestamp": WHEN}],
        }])
        code, _, err = run(capsys, "classify", "--corpus", str(unlabeled),
                           "--queries", str(queries_file(tmp_path)), *RELAXED)
        assert code == 1
        assert "no labeled" in err


class TestCrossval:
    def test_json_to_stdout(self, capsys, tmp_path):
        code, out, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                           *RELAXED, "--folds", "3", "--k", "3")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["folds"]) == 3
        assert payload["aggregate"]["accuracy"]["mean"] == 1.0
        assert payload["config"]["model"]["k"] == 3
        assert payload["config"]["folds"] == 3

    def test_output_file_plus_human_summary(self, capsys, tmp_path):
        out_path = tmp_path / "cv.json"
        code, out, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                           *RELAXED, "--folds", "3", "--k", "3",
                           "--output", str(out_path))
        assert code == 0
        assert "mean accuracy 1.00" in out
        payload = json.loads(out_path.read_text(encoding="utf-8"))
        assert payload["aggregate"]["accuracy"]["std"] == 0.0

    def test_held_out_ids_excluded(self, capsys, tmp_path):
        ids = tmp_path / "holdout.txt"
        ids.write_text("# held out\nb2\nd2\n", encoding="utf-8")
        # 4 accounts remain, so each fold trains on 2: k must be 1
        code, out, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                           *RELAXED, "--folds", "2", "--k", "1", "--test-ids", str(ids))
        assert code == 0
        payload = json.loads(out)
        seen = {i for f in payload["folds"] for i in f["validation_ids"]}
        assert seen == {"b0", "b1", "d0", "d1"}

    def test_too_many_folds_exits_1(self, capsys, tmp_path):
        code, _, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                         *RELAXED, "--folds", "7")
        assert code == 1


class TestTestCommand:
    def test_report_payload(self, capsys, tmp_path):
        ids = tmp_path / "test_ids.txt"
        ids.write_text("b2\nd2\n", encoding="utf-8")
        code, out, _ = run(capsys, "test", "--corpus", str(corpus_file(tmp_path)),
                           *RELAXED, "--k", "3", "--test-ids", str(ids))
        assert code == 0
        payload = json.loads(out)
        assert payload["confusion"] == [[1, 0], [0, 1]]
        assert payload["accuracy"] == 1.0
        assert [p["account_id"] for p in payload["predictions"]] == ["b2", "d2"]

    def test_requires_test_ids(self, capsys, tmp_path):
        code, _, _ = run(capsys, "test", "--corpus", str(corpus_file(tmp_path)), *RELAXED)
        assert code == 1

    def test_empty_ids_file_exits_1(self, capsys, tmp_path):
        ids = tmp_path / "empty.txt"
        ids.write_text("# nothing\n", encoding="utf-8")
        code, _, _ = run(capsys, "test", "--corpus", str(corpus_file(tmp_path)),
                         *RELAXED, "--test-ids", str(ids))
        assert code == 1

    def test_unknown_id_exits_1(self, capsys, tmp_path):
        ids = tmp_path / "ids.txt"
        ids.write_text("ghost\n", encoding="utf-8")
        code, _, _ = run(capsys, "test", "--corpus", str(corpus_file(tmp_path)),
                         *RELAXED, "--test-ids", str(ids))
        assert code == 1


class TestReportCommand:
    def test_renders_stored_report(self, capsys, tmp_path):
        ids = tmp_path / "ids.txt"
        ids.write_text("b2\nd2\n", encoding="utf-8")
        out_path = tmp_path / "report.json"
        code, _, _ = run(capsys, "test", "--corpus", str(corpus_file(tmp_path)),
                         *RELAXED, "--k", "3", "--test-ids", str(ids),
                         "--output", str(out_path))
        assert code == 0
        code, out, _ = run(capsys, "report", str(out_path))
        assert code == 0
        assert "accuracy: 1.00" in out
        assert "Key \\ Output" in out

    def test_missing_file_exits_2(self, capsys):
        code, _, _ = run(capsys, "report", "/nonexistent/report.json")
        assert code == 2


class TestConfigResolution:
    def test_config_file_applies(self, capsys, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({
            "filters": {"min_followers": 0, "min_tweets": 1},
            "model": {"k": 3},
            "folds": 3,
        }), encoding="utf-8")
        code, out, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                           "--config", str(cfg))
        assert code == 0
        payload = json.loads(out)
        assert payload["config"]["model"]["k"] == 3
        assert payload["config"]["folds"] == 3

    def test_flags_beat_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({
            "filters": {"min_followers": 0, "min_tweets": 1},
            "model": {"k": 5}, "folds": 3,
        }), encoding="utf-8")
        code, out, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                           "--config", str(cfg), "--k", "3")
        assert code == 0
        assert json.loads(out)["config"]["model"]["k"] == 3

    def test_corpus_path_from_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({
            "paths": {"corpus": str(corpus_file(tmp_path))},
            "filters": {"min_followers": 0, "min_tweets": 1},
            "model": {"k": 3}, "folds": 3,
        }), encoding="utf-8")
        code, out, _ = run(capsys, "crossval", "--config", str(cfg))
        assert code == 0
        assert json.loads(out)["aggregate"]["accuracy"]["mean"] == 1.0

    def test_unknown_config_key_exits_1(self, capsys, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({"mystery": 1}), encoding="utf-8")
        code, _, err = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                           "--config", str(cfg))
        assert code == 1
        assert "mystery" in err

    def test_non_object_config_exits_1(self, capsys, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text("[1, 2]", encoding="utf-8")
        code, _, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                         "--config", str(cfg))
        assert code == 1

    def test_missing_corpus_path_exits_1(self, capsys):
        code, _, err = run(capsys, "crossval")
        assert code == 1
        assert "corpus" in err

    def test_missing_corpus_file_exits_2(self, capsys):
        code, _, _ = run(capsys, "crossval", "--corpus", "/nonexistent/corpus.jsonl")
        assert code == 2

    def test_missing_config_file_exits_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                         "--config", "/nonexistent/config.json")
        assert code == 2

    def test_window_flags(self, capsys, tmp_path):
        # nothing inside a 2020 window: every account is filtered out
        code, _, _ = run(capsys, "crossval", "--corpus", str(corpus_file(tmp_path)),
                         *RELAXED, "--window-start", "2020-01-01",
                         "--window-end", "2020-12-31", "--folds", "3")
        assert code == 1

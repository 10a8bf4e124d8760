# Copyright 2026 The assertkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import os
from pathlib import Path

import pytest

import assertkit

FIXTURES = Path(os.environ.get("ASSERTKIT_FIXTURES", Path(__file__).parents[1] / "fixtures"))
CORPUS = FIXTURES / "trace_corpus"


def read_jsonl(path):
    return [json.loads(line) for line in Path(path).read_text().splitlines() if line.strip()]


def test_version():
    assert assertkit.__version__ == "0.1.0"


def test_metrics():
    assert assertkit.exact_match("assertTrue ( x ) ;", ["assertTrue", "(", "x", ")", ";"])
    assert assertkit.bleu4(["a b c d"], ["a b c d"]) == pytest.approx(100.0)
    p = "the cat sat on mat"
    r = "the cat sat on the mat"
    want = 100 * math.exp(-0.2) * (0.75 * (2 / 3) * 0.5) ** 0.25
    assert assertkit.bleu4([p], [r]) == pytest.approx(want, abs=1e-9)
    assert assertkit.rouge_l("a b c", "a c b") == pytest.approx(200 / 3)
    assert assertkit.edit_distance("a b", "b a") == 1
    with pytest.raises(ValueError):
        assertkit.rouge_l("", "a")


def test_mcnemar():
    exact = assertkit.mcnemar(0, 10, 2, 0)
    assert exact["method"] == "exact-binomial"
    assert exact["p_value"] == pytest.approx(2 * (1 + 12 + 66) / 4096)
    assert exact["odds_ratio"] == pytest.approx(5.0)
    chi = assertkit.mcnemar(100, 60, 30, 10)
    assert chi["method"] == "chi-square-corrected"
    assert chi["statistic"] == pytest.approx(841 / 90)
    run = {"a": True, "b": False, "c": True}
    same = assertkit.compare_outcomes(run, run)
    assert same["p_value"] == 1.0
    assert same["overlap"]["unique_to_run1"] == 0


def test_pipeline(tmp_path):
    out = assertkit.mine(CORPUS, tmp_path / "mine")
    assert "22 methods" in out
    assertkit.build(tmp_path / "mine" / "methods.jsonl", tmp_path / "build", seed=42)
    test_split = tmp_path / "build" / "test.jsonl"
    rows = read_jsonl(test_split)
    assert rows and all("<AssertPlaceHolder>" in r["src"] for r in rows)
    preds = tmp_path / "preds.jsonl"
    preds.write_text("".join(json.dumps({"id": r["id"], "pred": r["tgt"]}) + "\n" for r in rows))
    assertkit.evaluate(preds, test_split, tmp_path / "eval")
    report = json.loads((tmp_path / "eval" / "report.json").read_text())
    assert report["accuracy"] == 1.0
    assert report["bleu4"] == pytest.approx(100.0)
    assertkit.compare(preds, preds, tmp_path / "cmp", split=test_split)
    cmp = json.loads((tmp_path / "cmp" / "comparison.json").read_text())
    assert cmp["p_value"] == 1.0
    table = assertkit.corpus_stats([test_split])
    assert "AvgL" in table


def test_errors(tmp_path):
    with pytest.raises(assertkit.ConfigError):
        assertkit.build(tmp_path / "x.jsonl", tmp_path / "b", ratios="1,2")
    with pytest.raises(RuntimeError):
        assertkit.mine(tmp_path / "absent", tmp_path / "m")
    code, _, err = assertkit.run_cli(["build"])
    assert code == 2 and err

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

"""Python front end for the assertkit C++ core.

Pipeline steps write the same files as the command line tool. Metric
helpers take either token lists or whitespace-separated strings.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    build,
    compare,
    corpus_stats,
    evaluate,
    mine,
    run_cli,
    split_tokens,
)

__version__ = _core.version()

__all__ = [
    "ConfigError",
    "bleu4",
    "build",
    "compare",
    "compare_outcomes",
    "corpus_stats",
    "edit_distance",
    "evaluate",
    "exact_match",
    "mcnemar",
    "mine",
    "rouge_l",
    "run_cli",
    "split_tokens",
]


def _tokens(x):
    return _core.split_tokens(x) if isinstance(x, str) else list(x)


def exact_match(pred, ref):
    return _core.exact_match(_tokens(pred), _tokens(ref))


def bleu4(predictions, references):
    """Corpus BLEU-4 on a 0-100 scale."""
    return _core.bleu4([_tokens(p) for p in predictions], [_tokens(r) for r in references])


def rouge_l(pred, ref):
    return _core.rouge_l(_tokens(pred), _tokens(ref))


def edit_distance(pred, ref):
    return _core.edit_distance(_tokens(pred), _tokens(ref))


def mcnemar(a, b, c, d):
    """McNemar test on a paired table; b and c are the discordant cells."""
    return json.loads(_core._mcnemar_json(a, b, c, d))


def compare_outcomes(run1, run2, alpha=0.05, family_size=1):
    """Compare two {id: correct} mappings; returns the comparison.json dict."""
    return json.loads(_core._compare_json(dict(run1), dict(run2), alpha, family_size))

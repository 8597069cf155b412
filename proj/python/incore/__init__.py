# Copyright 2026 The incore Authors.
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
"""Static port-pressure, critical-path and loop-carried dependency analysis
of x86 and AArch64 loop kernels."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from . import _core
from ._core import IncoreError, bench_gen, format_cycles, model_search_path

__all__ = [
    "IncoreError",
    "analyze",
    "analyze_file",
    "bench_gen",
    "export_graph",
    "format_cycles",
    "model_search_path",
    "model_yaml",
    "models",
    "render",
    "run_cli",
]

_PACKAGED_MODELS = Path(__file__).resolve().parent / "models"


def _resolve(arch: str) -> str:
    """Maps a model name to the copy shipped with the package, if any."""
    if os.path.isfile(arch):
        return arch
    packaged = _PACKAGED_MODELS / f"{arch}.yml"
    return str(packaged) if packaged.is_file() else arch


def _lines(lines: tuple[int, int] | None) -> tuple[int, int] | None:
    return None if lines is None else (int(lines[0]), int(lines[1]))


def analyze(
    text: str,
    arch: str,
    unroll: int = 1,
    isa: str | None = None,
    lines: tuple[int, int] | None = None,
) -> dict[str, Any]:
    """Analyzes the marked kernel of `text` and returns the structured report.

    Cycle values are exact rational strings such as "59/6"; use
    `fractions.Fraction` to compute with them.
    """
    doc = _core.analyze(text, _resolve(arch), unroll, isa, _lines(lines), "structured")
    return json.loads(doc)


def analyze_file(path: str | os.PathLike[str], arch: str, **kwargs: Any) -> dict[str, Any]:
    return analyze(Path(path).read_text(), arch, **kwargs)


def render(
    text: str,
    arch: str,
    unroll: int = 1,
    isa: str | None = None,
    lines: tuple[int, int] | None = None,
) -> str:
    """The per-line text report, as printed by `incore analyze`."""
    return _core.analyze(text, _resolve(arch), unroll, isa, _lines(lines), "text")


def export_graph(
    text: str,
    arch: str,
    unroll: int = 1,
    isa: str | None = None,
    lines: tuple[int, int] | None = None,
) -> str:
    return _core.export_graph(text, _resolve(arch), unroll, isa, _lines(lines))


def model_yaml(arch: str) -> str:
    return _core.model_yaml(_resolve(arch))


def models() -> list[str]:
    names = {p.stem for p in _PACKAGED_MODELS.glob("*.yml")}
    names.update(_core.models())
    return sorted(names)


def run_cli(*args: str) -> tuple[int, str, str]:
    """Runs the command-line interface in-process."""
    return _core.run_cli(list(args))

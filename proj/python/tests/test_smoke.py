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
from fractions import Fraction
from pathlib import Path

import pytest

import incore

DATA = Path(__file__).resolve().parents[2] / "tests" / "data"
GAUSS_SEIDEL = DATA / "gauss_seidel.tx2.s"


def test_models_are_packaged():
    assert {"clx", "tx2", "zen"} <= set(incore.models())
    assert "arch_name: tx2" in incore.model_yaml("tx2")


def test_gauss_seidel_summary():
    report = incore.analyze_file(GAUSS_SEIDEL, "tx2", unroll=4)
    assert Fraction(report["lcd_total"]) == 72
    assert Fraction(report["cp_total"]) == 100
    assert round(float(Fraction(report["tp_per_src_iter"])), 2) == 2.46
    text = incore.render(GAUSS_SEIDEL.read_text(), "tx2", unroll=4)
    assert text.rstrip().endswith("TP 2.46 | LCD 18.0 | CP 25.0 cy/it")


def test_line_range_and_graph():
    text = GAUSS_SEIDEL.read_text()
    report = incore.analyze(text, "tx2", unroll=4, lines=(519, 557))
    assert Fraction(report["cp_total"]) == 100
    dot = incore.export_graph(text, "tx2")
    assert dot.startswith("digraph")


def test_errors_raise():
    with pytest.raises(incore.IncoreError, match="start marker not found"):
        incore.analyze("\tnop\n", "clx")
    with pytest.raises(incore.IncoreError, match="unknown architecture"):
        incore.analyze(GAUSS_SEIDEL.read_text(), "pentium")


def test_bench_gen_self_validates():
    bench = incore.bench_gen("fadd fp64,fp64,fp64", "aarch64", mode="latency", instances=4)
    assert bench["key"] == "fadd-fp64_fp64_fp64"
    report = incore.analyze(bench["assembly"], "tx2")
    assert Fraction(report["lcd_total"]) == 4 * 6


def test_cli_in_process_and_cycles():
    status, out, _ = incore.run_cli("models")
    assert status == 0 and "tx2" in out.split()
    assert incore.format_cycles("2/6") == "1/3"
    assert incore.format_cycles("0.50") == "0.5"

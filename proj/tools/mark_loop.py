#!/usr/bin/env python3
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
"""Insert start/end byte markers around a labelled loop in an assembly file."""

import argparse
import re
import sys

MARKERS = {
    "x86": (["\tmovl\t$111, %ebx", "\t.byte\t100,103,144"],
            ["\tmovl\t$222, %ebx", "\t.byte\t100,103,144"]),
    "aarch64": (["\tmov\tx1, #111", "\t.byte\t213,3,32,31"],
                ["\tmov\tx1, #222", "\t.byte\t213,3,32,31"]),
}


def mark(lines, label, isa):
    start, end = MARKERS[isa]
    head = next((i for i, l in enumerate(lines) if l.strip() == label + ":"), None)
    if head is None:
        raise SystemExit("label %s not found" % label)
    branch = re.compile(r"^\s*(j\w+|b\.?\w*|cbn?z|tbn?z)\s+(.*,\s*)?%s\s*$" % re.escape(label))
    tail = next((i for i in range(len(lines) - 1, head, -1) if branch.match(lines[i])), None)
    if tail is None:
        raise SystemExit("no backward branch to %s" % label)
    return lines[:head] + start + lines[head:tail + 1] + end + lines[tail + 1:]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("file")
    ap.add_argument("label", help="loop head label, e.g. .L5")
    ap.add_argument("--isa", choices=sorted(MARKERS), default="x86")
    ap.add_argument("-o", "--output")
    args = ap.parse_args()
    with open(args.file) as f:
        lines = f.read().splitlines()
    text = "\n".join(mark(lines, args.label, args.isa)) + "\n"
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()

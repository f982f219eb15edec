# Copyright 2026 The hardyweak Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the hardyweak binary: schema validity, exit codes,
example values and TSV layout.

usage: check_cli.py <hardyweak binary> <report.schema.json>
"""

import json
import math
import subprocess
import sys

import jsonschema

EXE, SCHEMA_PATH = sys.argv[1], sys.argv[2]
with open(SCHEMA_PATH, encoding="utf-8") as f:
    SCHEMA = json.load(f)
jsonschema.Draft7Validator.check_schema(SCHEMA)
VALIDATOR = jsonschema.Draft7Validator(SCHEMA)

failures = []


def run(*args):
    return subprocess.run([EXE, *args], capture_output=True, text=True, check=False)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def report(*args):
    r = run(*args)
    check(r.returncode == 0, f"exit 0: {' '.join(args)}")
    doc = json.loads(r.stdout)
    errors = sorted(VALIDATOR.iter_errors(doc), key=str)
    check(not errors, f"schema: {' '.join(args)}" + (f" ({errors[0].message})" if errors else ""))
    return doc["payload"]


INVOCATIONS = [
    ["table"], ["table", "--convention", "h-inner"],
    ["prep", "--mode", "flawed"], ["prep", "--mode", "correct"], ["prep", "--mode", "compare"],
    ["pointer", "--observable", "pv1", "--g-list", "0.2,0.1,0.05"],
    ["pointer", "--observable", "a1", "--gamma", "1", "--epsilon", "0"],
    ["pointer", "--observable", "ph1"], ["pointer", "--observable", "pv2"],
    ["pointer", "--observable", "ph2"], ["pointer", "--observable", "a2", "--gamma", "0.3", "--epsilon", "-2"],
    ["joint", "--pair", "vv"], ["joint", "--pair", "hh"], ["joint", "--pair", "vh"], ["joint", "--pair", "hv"],
    ["strong"], ["strong", "--convention", "h-inner"],
    ["a12"], ["a12", "--gamma", "0.5", "--epsilon", "0.5"],
    ["narrative"], ["--timestamp", "table"],
]
payloads = {" ".join(a): report(*a) for a in INVOCATIONS}

p = payloads["table"]
check(p["joint"] == [[0, 1], [1, -1]], "table joint [[0,1],[1,-1]]")
h = payloads["table --convention h-inner"]
check(h["joint"] == p["joint"] and h["labels"] == ["H", "V"], "h-inner: same numbers, labels swapped")

check(abs(payloads["prep --mode flawed"]["flawed"]["fidelity_with_target"] - 1 / 3) < 1e-12, "flawed fidelity 1/3")
s = payloads["prep --mode correct"]["schmidt"]
check(abs(s["a"] - 0.934172) < 1e-6 and abs(s["b"] - 0.356822) < 1e-6, "correct prep Schmidt a, b")
c = payloads["prep --mode compare"]
check("flawed" in c and "correct" in c, "compare has both blocks")

check(abs(payloads["pointer --observable pv1 --g-list 0.2,0.1,0.05"]["estimate"][0] - 1) <= 0.01, "pv1 estimate ~ 1")
check(payloads["pointer --observable a1 --gamma 1 --epsilon 0"]["analytic"] == [1, 0], "a1 analytic 1")
check(payloads["pointer --observable ph1"]["analytic"][0] == 0, "ph1 analytic 0")

vv = payloads["joint --pair vv"]
check(abs(vv["extracted"]) <= 0.02 and abs(vv["raw_ratio"] - 0.5) <= 0.02, "joint vv extracted 0, raw 0.5")
check(abs(payloads["joint --pair hh"]["extracted"] + 1) <= 0.02, "joint hh extracted -1")

st = payloads["strong"]["strong_conditionals_by_label"]
check(all(abs(st[k] - 1 / 3) < 1e-12 for k in ("HH", "HV", "VH")) and abs(st["VV"]) < 1e-12,
      "strong conditionals (1/3,1/3,1/3,0)")

tsv = run("table", "--format", "tsv")
lines = tsv.stdout.splitlines()
check(tsv.returncode == 0 and len(lines) == 3 and all(len(l.split("\t")) == 3 for l in lines), "tsv 3x3")
check(lines[1].split("\t")[1:] == ["0", "1"] and lines[2].split("\t")[1:] == ["1", "-1"], "tsv values")
check(run("table", "--format", "text").returncode == 0, "text format")

for args in (["table", "--format", "xml"], ["prep", "--mode", "bogus"], ["pointer", "--g-list", ""],
             ["pointer", "--g-list", "0.1,abc,0.01"], ["pointer", "--g-list", "0.1,0.2,0.3"],
             ["joint", "--sigma", "-1"], ["strong", "--g", "2"], ["nope"], []):
    r = run(*args)
    check(r.returncode == 2 and r.stdout == "" and "sage" in r.stderr, f"usage error exit 2: {args}")

r = run("pointer", "--post", "vv")
check(r.returncode == 3 and r.stdout == "" and r.stderr.strip(), "orthogonal post-selection exit 3")
check(run("--help").returncode == 0 and run("pointer", "--help").returncode == 0, "--help exits 0")

if failures:
    print(f"{len(failures)} check(s) failed")
    sys.exit(1)
print("all CLI checks passed")

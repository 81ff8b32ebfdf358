"""Smoke test for the zdkit extension module.

Build and run:
    cargo build -p zdkit-python --features extension-module
    cp target/debug/libzdkit_py.so python/zdkit.so
    python3 python/smoke_test.py
"""

import json

import zdkit

f = zdkit.construct_zn(11, 5)
s = f.spectrum()
assert (f.n, f.m) == (11, 3)
assert s["values"] == [4] and s["zdb"] and s["type_a"] and s["identities_hold"]
print(repr(f))

g, case = zdkit.change_point(f)
codes = sorted(g.with_zero_label(l).code()["parameters"] for l in range(g.m))
assert codes == ["(11, 11, 6, 5)_2", "(11, 11, 6, 6)_2"], codes
print("change point:", case, codes)

d = zdkit.construct_product_fields([(3, 2), (5, 1)], 4).dss()
assert d["optimal"], d

assert zdkit.lg_bound(52, 17) == ("36/17", 3)
assert zdkit.cwc_bound(21, 20, 20, 11) == "21/1"
assert zdkit.ccc_bound(13, 8, [4, 4, 5]) is None
assert zdkit.dss_bound(45, 11, 40) == 44

seq = zdkit.FunctionTable.from_sequence(list("baaca"))
assert seq.m == 3 and seq.values == [0, 1, 1, 2, 1]
back = zdkit.FunctionTable.from_json(f.to_json())
assert back.values == f.values
assert zdkit.describe_group(json.dumps({"kind": "gf", "p": 3, "r": 2}))[1] == 9

try:
    zdkit.construct_zn(15, 4)
except ValueError as e:
    print("expected error:", e)
else:
    raise AssertionError("Z_15 with e = 4 should fail")

rows = zdkit.reproduce_rows("examples")
assert not [r for r in rows if r["status"] == "FAIL"]
print(len(rows), "example rows,", sum(r["status"] == "PASS" for r in rows), "pass")

code, out, _ = zdkit.run_cli(["--format", "json", "construct", "--family", "zn", "--n", "13", "--e", "3"])
assert code == 0 and json.loads(out)["results"]["zdb"]
print("ok")

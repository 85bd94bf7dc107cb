"""Smoke test for the layerlat_py extension.

Build it with `cargo build -p layerlat-py --features extension-module`, copy
target/debug/liblayerlat_py.so to layerlat_py.so somewhere on PYTHONPATH, then
run this file.
"""

import layerlat_py as ll

s3 = ll.Chain(ll.Bunch.fixture("s3"))
assert s3.bunch().bunch_type() == "Odd"
assert s3.neg("t:e") == "t:e"
assert s3.compare("u:d:e", "t:e") == -1
assert s3.bounds() == ("u:e", "u:d:e")

case, witness, ext = s3.fill_gap("t:e", "u:e")
assert (case, witness) == ("2a", "u-1:e")
assert ext.compare("t:e", witness) == -1 and ext.compare(witness, "u:e") == -1

dense, trace = s3.densify(3, 1)
assert len(trace) == 2 and len(dense.bunch()) == 4

zb = ll.Chain(ll.Bunch.fixture("zb"))
assert zb.mul("t:2", "t:-5") == "t:-3"
placed = zb.standardize(4)
assert placed[0][1:] == ("0", "1") and placed[-1][1:] == ("1", "1")

triples, failures = ll.Chain(ll.Bunch.fixture("lz2")).check_laws(2000, 7)
assert triples == 2000 and failures == 0

(table,) = ll.enumerate_chains(5)
assert ll.satisfies_axioms(table)
assert len(ll.decompose(table)) == 3
assert ll.Chain(ll.decompose(s3.table_csv())).table_csv() == s3.table_csv()

try:
    ll.Chain(ll.Bunch.fixture("ze")).fill_gap("t:0", "t:1")
except ValueError as e:
    assert "even" in str(e).lower()
else:
    raise AssertionError("even chains cannot be densified")

b = ll.Bunch.parse(ll.Bunch.fixture("lz2").serialize())
assert b.validate()[0]
print("smoke test ok")

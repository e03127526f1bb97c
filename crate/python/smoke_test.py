"""Smoke test for the schubert_a2 extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import json

import schubert_a2 as sa

e = sa.AffineElement()
w = sa.AffineElement("0121021")
assert len(e) == 0 and str(e) == "e"
assert e.leq("012") and sa.leq("", "012")
assert not sa.leq("2", "01")
assert w.word == "0210201" and w.length == 7
assert w.chamber() == "I" and w.type_of() == 2
assert w * w.inverse() == e
assert hash(sa.AffineElement("0121021")) == hash(w)

hexagon = sa.Hexagon(w)
assert hexagon.owner == w
assert len(hexagon.vertices) == 6
assert all(v in hexagon for v in hexagon.vertices)
assert json.loads(hexagon.to_json())["owner"] == "0210201"

assert sa.q(w, "01") == sa.q_structured(w, "01")
table = dict(sa.q_table("01020102010"))
assert max(table.values()) == 4

assert [str(x) for x in sa.maximal_nrs(w)] == ["010", "0121", "0201"]
assert len(sa.smooth_points(w)) == 28
assert sa.singular_codim(w) == 3
assert sa.classify("0102") == "smooth"
assert sa.classify("0120") == "singular"
assert sum(row[2] for row in sa.enumerate_smooth()) == 31

assert sa.multiplicity("0", "") == "-1/(b0)"
assert sa.kumar_smooth(w, w) and not sa.kumar_smooth(w, "01")

report = json.loads(sa.locus_report(w))
assert report["summary"]["classification"] == "singular"

try:
    sa.AffineElement("013")
except ValueError:
    pass
else:
    raise AssertionError("malformed word accepted")

try:
    sa.Hexagon("0120")
except sa.PreconditionError:
    pass
else:
    raise AssertionError("spiral element has no hexagon")

print("smoke test passed")

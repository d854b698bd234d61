"""Smoke test for the coideal extension module.

Build and install first:
    cd crates/python && maturin build --release && pip install ../../target/wheels/coideal-*.whl
"""
import json

import coideal

uq = coideal.Uq("A1")
assert uq.rank == 1
assert uq.equal("E1*F1 - F1*E1", "(K1 - K1^-1)/(q - q^-1)")
print("nf(E1*F1) =", uq.normal_form("E1*F1"))

b3 = coideal.Case("I-B3")
assert b3.sigma_rank == 3
print("tau_1^-(B2) =", b3.tau_image(1, 2, minus=True))

s = coideal.Session("II-A7")
assert s.eval("nf(B1*B7 - B7*B1)") == s.eval("nf((K1*K7^-1 - K1^-1*K7)/(q - q^-1))")
try:
    s.eval("nf(B1*")
except SyntaxError as e:
    print("syntax error reported:", e)
else:
    raise AssertionError("expected a syntax error")

r = coideal.Realization("III-A7")
assert (r.size, r.dim_k) == (8, 36)

rep = coideal.run_suite("I-B3")
assert rep.failed == 0 and rep.exit_code() == 0, rep
rows = json.loads(rep.to_json())
assert len(rows) == len(rep) and {"suite", "check", "identity", "status", "ms", "max_terms"} <= rows[0].keys()
print(rep)

try:
    coideal.run_suite("nope")
except ValueError:
    pass
else:
    raise AssertionError("unknown suite accepted")
print("ok")

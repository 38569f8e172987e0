"""Smoke test for the knotinv extension.

Build and install first:

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/knotinv-*.whl
"""

import json
import sys

import knotinv


def check(cond, what):
    if not cond:
        print(f"FAIL {what}")
        sys.exit(1)
    print(f"ok   {what}")


def main():
    p = knotinv.LaurentPoly("t + t^-1")
    q = knotinv.LaurentPoly("1 - t - t^-1")
    check(str(p * q) == "-t^-2 + t^-1 - 2 + t - t^2", "product text")
    check(p.is_palindromic() and p.involute() == p, "palindromic")
    re, im = p.eval_circle(0.25)
    check(abs(re) < 1e-12 and abs(im) < 1e-12, "value at i")

    trefoil = knotinv.SeifertMatrix([[-1, 1], [0, -1]], name="3_1")
    r = trefoil.analyze()
    check((r.mu, r.eta, r.n_r, r.genus) == (1, 1, 1, 1), "trefoil invariants")
    jumps = [x for x, _, eta in r.plot if eta > 0]
    check(len(jumps) == 2 and abs(jumps[0] - 1 / 6) < 1e-9, "trefoil roots at 1/6, 5/6")
    check(json.loads(r.json)["name"] == "3_1", "report json")

    for k in (1, 2, 3):
        check(knotinv.SeifertMatrix.torus(k).analyze().n_r == k, f"T(2,{2 * k + 1}) n_r = {k}")

    s = trefoil.connected_sum(trefoil.mirror()).analyze()
    check((s.eta, s.n_r) == (2, 2), "3_1 # -3_1")

    g = knotinv.glue(p, q)
    check(g.epsilon == 1 and g.merged == p * q and g.residual < 1e-9, "glue")
    try:
        knotinv.glue(knotinv.LaurentPoly("t - 1 + t^-1"), knotinv.LaurentPoly("t - 1 + t^-1"))
        check(False, "glue rejects common roots")
    except knotinv.HypothesisError as e:
        check("NotCoprime" in str(e), "glue rejects common roots")

    d = json.loads(knotinv.diagonalize('["t - 1 + t^-1", "-t + 1 - t^-1"]'))
    check(d["size"] == 2 and d["reason"] == "eta-bound", "diagonalize shared root")

    try:
        knotinv.LaurentPoly("t +")
        check(False, "parse error")
    except ValueError:
        check(True, "parse error")
    print("all checks passed")


if __name__ == "__main__":
    main()

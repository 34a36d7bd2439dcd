#!/usr/bin/env python3
"""Smoke test for the ghkpy extension module.

Build the extension first (cargo build -p ghkpy), then run this script from
anywhere; it locates the compiled library under target/ and imports it.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libghkpy.so", "libghkpy.dylib", "ghkpy.dll")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("ghkpy library not found; run `cargo build -p ghkpy` first")
    staging = Path(tempfile.mkdtemp(prefix="ghkpy-"))
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, staging / f"ghkpy{suffix}")
    sys.path.insert(0, str(staging))
    import ghkpy

    return ghkpy


def main():
    ghk = load_module()

    half = ghk.Scalar("1/2")
    gauss = ghk.Scalar("3/2 i-1")
    assert str(half + half) == "1"
    assert str(gauss.neg_conj()) == "1+3/2 i"

    seg = ghk.Segment("[0,2]")
    assert len(seg) == 3
    assert str(seg.truncate_left()) == "[1,2]"

    x = ghk.KElement.monomial("{[0,1],[0,0]}")
    dx = x.jac(ghk.Scalar("0"))
    assert str(dx) == "{[0,0],[1,1]} + {[0,1]}", str(dx)
    assert x.hermitian_dual().hermitian_dual() == x
    assert ghk.KElement.from_json(x.to_json()) == x

    w = ghk.Weight("2,1", "0,0")
    assert w.mu() == ["2", "1"]
    assert str(w.gamma()) == "{[1/2,1/2],[1/2,3/2]}"

    module = ghk.HModule.gamma(w)
    assert module.m() == 3 and module.dim() == 3
    ok, first_failure = module.check_relations()
    assert ok and first_failure is None

    jac = module.jacquet(half)
    assert jac.dim() == 3
    assert module.jacquet(ghk.Scalar("7")).dim() == 0

    st = ghk.HModule.steinberg(ghk.Segment("[0,0]"))
    prod = st.induce(ghk.HModule.steinberg(ghk.Segment("[5,5]")))
    assert prod.dim() == 2
    assert sorted(prod.fingerprint()) == [(["0", "5"], 1), (["5", "0"], 1)]

    dual = prod.hermitian_dual()
    assert dual.cojacquet(ghk.Scalar("0")).dim() == prod.jacquet(ghk.Scalar("0")).dim()

    round_trip = ghk.HModule.from_json(prod.to_json())
    assert round_trip.dim() == prod.dim()
    assert round_trip.check_relations()[0]

    report = json.loads(ghk.kcheck("2,1", "0,0", 1))
    assert report["pass"] and len(report["cases"]) == 2
    for case in report["cases"]:
        assert case["pathA"] == case["pathB"]

    suite = json.loads(ghk.run_suite(seed=3, case_count=6))
    assert suite["pass"], suite

    print("ghkpy smoke test passed")


if __name__ == "__main__":
    main()

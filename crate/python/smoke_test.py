#!/usr/bin/env python3
"""Smoke test for the `wfuse` Python extension module.

Builds nothing itself: it expects `cargo build -p wfuse-py` (debug or
release) to have produced `libwfuse.so`, copies it next to a temp directory
as `wfuse.so`, imports it, and checks a handful of known values end to end.

Run from the repository root:

    cargo build -p wfuse-py --release
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / "release" / "libwfuse.so",
        REPO / "target" / "debug" / "libwfuse.so",
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit("libwfuse.so not found; run `cargo build -p wfuse-py` first")
    stage = Path(tempfile.mkdtemp(prefix="wfuse-py-"))
    shutil.copy2(lib, stage / "wfuse.so")
    sys.path.insert(0, str(stage))
    import wfuse

    print(f"loaded wfuse {wfuse.__version__} from {lib}")
    return wfuse


def close(a, b, tol=1e-12):
    assert abs(a - b) < tol, f"{a} != {b}"


def main():
    wfuse = load_module()

    # W states and fidelity
    w3 = wfuse.build_w(3)
    assert w3.qubit_count == 3
    amps = w3.amplitudes()
    close(sum(abs(a) ** 2 for a in amps), 1.0)
    close(abs(amps[0b001]) ** 2, 1.0 / 3.0)
    close(wfuse.fidelity(w3, w3), 1.0)
    print("ok  build_w / fidelity")

    # three-state scheme class probabilities at (3,3,3)
    branches = wfuse.run_scheme3(3, 3, 3)
    assert len(branches) == 9
    by_class = {}
    for b in branches:
        by_class[b["class"]] = by_class.get(b["class"], 0.0) + b["probability"]
    close(by_class["S"], 6 / 27)
    close(by_class["R"], 8 / 27)
    close(by_class["PR"], 4 / 27)
    close(by_class["PS"], 8 / 27)
    close(by_class["F"], 1 / 27)
    success = next(b for b in branches if b["gates"] == ["S", "S"])
    w6 = wfuse.build_w(6)
    close(success["post_state"].fidelity(w6), 1.0)
    print("ok  run_scheme3(3,3,3)")

    # truth table: 8 rows summing to 1, exact strings present
    rows = wfuse.truth_table3(2, 2, 2)
    assert len(rows) == 8
    close(sum(r["probability"] for r in rows), 1.0)
    assert rows[-1]["prob_exact"] == "1/8"
    assert rows[-1]["result"] == "F"
    print("ok  truth_table3(2,2,2)")

    # enhanced two-state scheme never fails
    enhanced = wfuse.outcomes2_enhanced(3, 3)
    assert [r["class"] for r in enhanced] == ["R", "S"]
    assert enhanced[1]["prob_exact"] == "5/9"
    print("ok  outcomes2_enhanced(3,3)")

    # exact planning
    plan = wfuse.dp_norecycle("three", 9)
    assert plan["cost_exact"] == "93"
    assert sorted(c["size"] for c in plan["children"]) == [3, 3, 6]
    assert wfuse.equal_size_sequence("three", 4) == [3, 6, 15, 42, 123]
    print("ok  dp_norecycle / equal_size_sequence")

    # exponent fit on the equal-size cost curve
    points = [(s, c) for s, c, _ in wfuse.equal_size_costs("three", 300)]
    fit = wfuse.fit_exponent(points)
    assert abs(fit["k"] - 1.9) <= 0.15, fit
    print(f"ok  fit_exponent (k = {fit['k']:.3f})")

    # Monte Carlo recycling: deterministic under a fixed seed
    a = wfuse.mc_recycle("three", 9, runs=300, seed=7)
    b = wfuse.mc_recycle("three", 9, runs=300, seed=7)
    assert a == b
    assert a["mean_cost"] <= 93.0
    print(f"ok  mc_recycle (mean {a['mean_cost']:.2f} of dp 93)")

    # error mapping
    try:
        wfuse.build_w(0)
    except ValueError:
        pass
    else:
        raise AssertionError("build_w(0) should raise ValueError")
    print("ok  error mapping")

    print("smoke test passed")


if __name__ == "__main__":
    main()

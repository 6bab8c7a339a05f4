"""Smoke test for the Python bindings.

Build and run from the repository root:

    cargo build -p pisotlab-python --release
    cp target/release/libpisotlab_py.so python/pisotlab.so
    python3 python/smoke_test.py
"""

import json
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pisotlab  # noqa: E402


def main():
    phi = pisotlab.AlgebraicNumber("poly=-1,-1,1;root=0")
    assert phi.minpoly == [-1, -1, 1]
    assert phi.degree == 2
    assert abs(phi.approx()[0] - (1 + math.sqrt(5)) / 2) < 1e-15

    c = pisotlab.classify(phi)
    assert c["is_pisot"] == "yes" and c["trace"] == "1"

    lehmer = pisotlab.AlgebraicNumber.from_poly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1], 0)
    assert pisotlab.classify(lehmer)["is_salem"] == "yes"
    assert pisotlab.pisot_power(lehmer, 8)["found"] is None

    h = pisotlab.height(pisotlab.AlgebraicNumber("rat=3/2"))
    assert h["H"]["mid"] == "3" and h["H"]["rad"] == "0"

    sq = phi ** 2
    assert sq.minpoly == [1, -3, 1]
    assert (-phi).approx()[0] < 0

    sqrt2 = pisotlab.AlgebraicNumber("poly=-2,0,1;root=0")
    p = pisotlab.partition([sqrt2])
    assert p["partition"]["r"] == 2 and p["lemma3"]["pass"]

    spec = {
        "alphas": ["rat=3/2"],
        "theta": "9/10",
        "epsilon": "1/2",
        "n_range": [1, 20],
        "q_range": [1, 20],
    }
    out = pisotlab.search(json.dumps(spec))
    assert out["cells"] == 400 and not out["undecided"]

    d = pisotlab.decay(phi, 40)
    mid = float(d["slope"]["mid"])
    assert abs(mid - math.log((math.sqrt(5) - 1) / 2)) < 1e-9

    prod = {
        "alpha": "rat=3/2",
        "a": {"kind": "geometric", "c": "1", "r": "2", "s": "0"},
        "b": {"kind": "geometric", "c": "1", "r": "1", "s": "0"},
        "epsilon": "1",
        "delta": "1",
        "m": 4,
        "pisot_power_max": 0,
    }
    cert = pisotlab.product(json.dumps(prod))
    assert cert["p"] == "164000"
    assert cert["hypotheses_62"]["liminf_ratio"]["verdict"] == "fails"

    dist, rad = pisotlab.power_distance(phi, 10)
    assert abs(float(dist) - 0.0081306187557833) < 1e-14

    try:
        pisotlab.AlgebraicNumber("poly=0,0,1;root=0")
    except ValueError:
        pass
    else:
        raise AssertionError("reducible polynomial accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()

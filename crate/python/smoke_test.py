"""Smoke test for the lawson_py extension module.

Run after building the extension, e.g.

    cargo build -p lawson-spectrum-py --release
    cp target/release/liblawson_py.so python/lawson_py.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import lawson_py  # noqa: E402


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    s = lawson_py.classify(1, 3)
    assert (s["m"], s["k"], s["kind"]) == (3, 1, "lawson-torus"), s

    inv = lawson_py.invariants(1, 1)
    assert inv["j"] == 1
    assert close(inv["lambda"], 4 * math.pi**2, 1e-12)

    inv = lawson_py.invariants(3, 1, cover=True)
    assert inv["j"] == 13
    assert inv["symbolic"] == "16*pi*3*E(sqrt(8)/3)"

    r = lawson_py.count_n2(3, 1, cover=True)
    assert r["n_of_two"] == 13 and r["multiplicity_of_two"] == 4, r

    t = lawson_py.monodromy(3, 1, 3.0, 2.0)
    assert close(t["discriminant"], 2.0, 1e-9), t
    assert close(t["phi_end"] * t["dpsi_end"] - t["psi_end"] * t["dphi_end"], 1.0, 1e-10)

    modes = lawson_py.eigenvalues(3, 1, 3.0, 2.5)
    assert close(modes[1]["lambda"], 2.0, 1e-8) and modes[1]["parity"] == "even", modes

    v = lawson_py.verify(2, 1)
    assert v["passed"] and v["j"] == 4, v

    k = 0.6
    kc = math.sqrt(1 - k * k)
    legendre = (
        lawson_py.ellip_e(k) * lawson_py.ellip_k(kc)
        + lawson_py.ellip_e(kc) * lawson_py.ellip_k(k)
        - lawson_py.ellip_k(k) * lawson_py.ellip_k(kc)
    )
    assert close(legendre, math.pi / 2, 1e-12)

    for bad in [(2, 2, False), (2, 1, True), (0, 1, False)]:
        try:
            lawson_py.classify(*bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"{bad} accepted")

    print("lawson_py smoke test passed")


if __name__ == "__main__":
    main()

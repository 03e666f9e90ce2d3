"""Smoke test for the Python extension.

Build first:  pip install --no-build-isolation -e crates/liepoisson-py
Run:          python python/smoke_test.py   (or pytest python/)
"""

import json
import math

import liepoisson_py as lp


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def matmul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))] for i in range(len(x))]


def test_iwasawa_roundtrip():
    g = [[2, 1 + 1j], [0, 0.5]]
    l, a, u = lp.iwasawa("grass:1,1", g)
    back = matmul(matmul(l, a), u)
    assert all(close(back[i][j], g[i][j]) for i in range(2) for j in range(2))


def test_su2_coordinates():
    l = lp.leaf_l(2, [1], [1 + 0j])
    assert close(l[0][0], 1) and close(l[0][1], 0) and close(l[1][0], 1) and close(l[1][1], 1)
    assert close(lp.haar_density(2, [1], [3 + 4j]), 1.0)
    rep = json.loads(lp.density_report(2, [1], [3 + 4j]))
    assert close(rep["a"][0], 1 / math.sqrt(26))
    assert rep["word"] == [1]


def test_cells_and_errors():
    assert lp.bruhat_cells("group:2", [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]) == ["1", ""]
    for bad in (lambda: lp.leaf_l(3, [1, 1], [1, 1]), lambda: lp.iwasawa("grass:1,1", [[1, 2], [2, 4]])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")


def test_verify_report():
    rep = json.loads(lp.verify("core", "grass:2,1", 5, 7))
    assert rep["pass"] and rep["instance"] == "grass:2,1"
    assert {c["name"] for c in rep["checks"]} >= {"nijenhuis", "diagram_u", "diagram_g0"}


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print("ok", name)

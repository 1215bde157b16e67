"""Smoke test for the compositum_py extension module."""

import json

import compositum_py as cp


def main():
    p = cp.Permutation([1, 2, 0])
    q = cp.Permutation.from_cycles(3, "(0 1)")
    assert (p * q).images == [p(q(i)) for i in range(3)]
    assert p.compose(p.inverse()) == cp.Permutation.identity(3)
    assert cp.group_order([p, q]) == 6

    c2 = cp.System.fixture("c2_complex")
    assert len(c2) == 2
    assert c2.fuse("A", "A") == {"I_C": 1}
    assert c2.base_field()["indices"] == {"C": 2}
    assert c2.weak_rigidity()

    doc = {
        "degree": 3,
        "ambient_generators": [[1, 0, 2], "(0 1 2)"],
        "fields": {"A": ["(1 2)"]},
        "composita": [{"source": "A", "target": "A", "phi": [1, 2, 0], "label": "X"}],
        "realization": {"builtin": "s3_x3m2"},
    }
    s3 = cp.System.from_json(json.dumps(doc)).close()
    assert s3.is_closed
    assert s3.fuse("X", "X") == {"I_A": 2, "X": 1}
    sweep = s3.oracle_sweep(seed=3)
    assert sweep["passed"] == sweep["pairs"]

    lattice = cp.lattice_sweep("cyclotomic:5")
    assert lattice["failures"] == [] and lattice["passed"] == lattice["pairs"]
    assert all(r["pass"] for r in cp.examples())

    try:
        c2.fuse("A", "missing")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown label accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()

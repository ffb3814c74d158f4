"""Smoke test for the Python bindings.

Build first with `pip install --no-build-isolation -e crates/python`.
"""

import json

import solvcurv


def main():
    s = solvcurv.build("orthogonal", [3, 5])
    c, dev, ok = s.einstein_check()
    assert ok and c < 0, (c, dev)
    assert s.dim_a == 3 and s.dim_n == 12
    assert s.max_random_sectional(500, 0) < 1e-9

    s1 = s.associate(preset="wb:1")
    assert sorted(f.split(":")[-1] for f in s1.flags) == ["U18", "U28", "U38"]
    plane = "U27+U28,U37+U38"
    k_before = s1.sectional(plane)
    attached = s1.attach([1, 1, 0])
    k_after = attached.sectional(plane)
    assert k_before > 1e-9 > -1e-9 > k_after, (k_before, k_after)
    assert attached.einstein_check()[2]

    back = solvcurv.Algebra.from_json(attached.to_json())
    assert back.labels == attached.labels
    assert json.loads(back.to_json())["schema"] == solvcurv.SCHEMA

    rows = solvcurv.sweep("sl_quaternion", [3])
    assert len(rows) == 6 and all(r["pass"] for r in rows)
    assert solvcurv.count_constructions("orthogonal", [3, 5]) == (1, 7)

    roots = solvcurv.root_system("orthogonal", [3, 5], [1, 1, 0])
    assert roots["lambda_prime"] == ["w3-w2"]
    assert solvcurv.build("so_star", [6]).fingerprint()["dim_n"] == 27

    try:
        s.attach([1, 1])
    except solvcurv.SolvcurvError as e:
        assert str(e).startswith("ParamError")
    else:
        raise AssertionError("expected a ParamError")

    print(f"ok: K {k_before:.6f} -> {k_after:.6f}, einstein constant {c:.6f}")


if __name__ == "__main__":
    main()

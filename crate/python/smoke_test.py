"""Smoke test for the cubicdet Python extension."""

import json
import cmath

import cubicdet_py as cd


def main():
    s = cd.Surface.builtin("fermat")
    print(s)
    assert s.field == "EisensteinQ"
    lines = s.lines()
    assert len(lines) == 27
    assert lines[0][0] == "a1"
    assert len(s.tritangent_planes()) == 45
    assert len(s.double_sixes()) == 36
    assert len(s.representations()) == 72
    assert s.segre_type() == "F4"
    assert sorted(set(s.line_kinds())) == ["FirstKind", "Real", "SecondKind"]

    classes = s.selfadjoint_classes()
    assert len(classes) == 6
    for u in classes:
        for m in u:
            for i in range(3):
                for j in range(3):
                    assert cmath.isclose(m[i][j], m[j][i].conjugate(), abs_tol=1e-12)
    r = json.loads(cd.is_definite(classes[0]))
    assert "Indefinite" in r, r

    report = json.loads(s.report("classify-real"))
    assert report["real"]["segre_type"] == "F4"
    assert report["schema_version"].startswith("1.")

    f5 = cd.Surface.builtin("f5paper")
    assert f5.field == "ComplexFloat"
    assert f5.segre_type() == "F5"
    summary = json.loads(f5.report("definiteness"))["definiteness_summary"]
    assert (summary["definite"], summary["indefinite"], summary["unknown"]) == (16, 8, 0), summary

    # the Clebsch cubic as explicit coefficients: sum z_i^3 - (sum z_i)^3
    c = cd.Surface.from_cubic(
        [0, -3, -3, -3, -3, -6, -6, -3, -6, -3, 0, -3, -3, -3, -6, -3, 0, -3, -3, 0]
    )
    assert c.segre_type() == "F1"

    p = cd.Surface.from_points(
        [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["1", "1", "1"], ["1", "2+1i", "3-2i"], ["1", "2-1i", "3+2i"]]
    )
    assert p.field == "GaussianQ"
    assert p.segre_type() == "F2"

    ev = cd.eigenvalues_at(classes[0], [1.0, 0.0, 0.0, 0.0])
    assert len(ev) == 3 and ev[0] <= ev[1] <= ev[2]

    dc = cd.divisor_classes()
    assert len(dc) == 72
    assert [sum(1 for a, _ in dc if a == k) for k in range(1, 6)] == [1, 20, 30, 20, 1]

    try:
        cd.Surface.from_cubic([1, 2])
    except ValueError as e:
        print("rejected:", e)
    else:
        raise AssertionError("short cubic accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()

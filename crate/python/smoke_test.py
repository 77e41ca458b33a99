"""Smoke test for the Python extension. Build it first with build_ext.sh."""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import bordered_magic as bm  # noqa: E402


def main():
    assert bm.magic_constant(10) == 505

    plan = bm.build_border(8)
    assert bm.verify_border(plan).valid
    assert plan.top_sum() == plan.left_sum() == 505
    frame = plan.frame()
    assert len(frame) == 10 and frame[1][1] is None
    assert frame[0][0] + frame[9][9] == 101

    square = bm.build_square(9)
    assert bm.verify_square(square).valid
    assert bm.verify_bordered(square).valid

    built, source = bm.construct_with_corners(8, 7, 8)
    assert (built.v, built.w) == (7, 8)
    assert bm.verify_border(built)
    try:
        bm.construct_with_corners(8, 1, 3)
    except ValueError as e:
        assert "opposite parity" in str(e)
    else:
        raise AssertionError("same-parity corners accepted")

    counts = bm.count_omega(4)
    assert all((n > 0) == ((v + w) % 2 == 1) for (v, w), n in counts.items())

    borders = bm.enumerate_omega(4, 1, 2)
    assert len(borders) == counts[(1, 2)]

    images = bm.orbit(plan)
    assert sorted(name for name, _ in images) == sorted(bm.symmetries())
    assert all(bm.verify_border(p).valid for _, p in images)
    flipped = bm.apply_symmetry(plan, "rotate_90")
    assert bm.verify_border(flipped).valid
    permuted = bm.permute_lines(plan, list(range(8))[::-1], list(range(8)))
    assert permuted.canonical() == plan.canonical()

    try:
        bm.BorderPlan(4, 1, 2, [34, 33, 32, 8], [6, 30, 29, 10])
    except ValueError as e:
        assert "row_sum" in str(e)
    else:
        raise AssertionError("invalid plan accepted")
    bad = bm.BorderPlan(4, 1, 2, [34, 33, 32, 8], [6, 30, 29, 10], check=False)
    report = bm.verify_border(bad)
    assert not report.valid and report.violations

    print(f"ok: {plan!r}, corners (7, 8) via {source}")


if __name__ == "__main__":
    main()

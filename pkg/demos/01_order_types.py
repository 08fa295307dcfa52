"""Orientations, order types, and rigidity radii.

Walks through the core exact predicates: the sign of the bordered
determinant, the full order type of a small planar tuple, what mirroring
does to it, and how far the points may move before any orientation can
change.
"""

from fractions import Fraction as F

import ordermotion as om


def main():
    print("# Orientation of three points")
    ccw = om.point_tuple([[0, 0], [1, 0], [0, 1]])
    print("counterclockwise:", om.orient(ccw.points))
    print("collinear:       ", om.orient(om.point_tuple([[0, 0], [1, 0], [2, 0]]).points))
    print("clockwise:       ", om.orient(om.point_tuple([[0, 0], [0, 1], [1, 0]]).points))

    print()
    print("# Order type of a 4-point tuple (triangle with an interior point)")
    P = om.point_tuple([[0, 0], [4, 0], [2, 4], [2, 1]])
    t = om.order_type(P)
    for subset, sign in zip(t.subsets(), t.signs):
        print(f"  triple {subset}: {sign:+d}")
    print("general position:", t.zero_free)

    print()
    print("# Mirroring negates every orientation")
    mirrored = om.order_type(om.mirror(P))
    print("mirror signs:", mirrored.signs)
    print("hamming distance to the original:", om.hamming(t, mirrored))
    print("(that is all", len(t.signs), "triples, the maximum possible)")

    print()
    print("# Rigidity radius")
    rr = om.robust_radius(P)
    print(f"every point may move by up to {rr.epsilon} (max-norm) without any")
    print(f"orientation changing; smallest determinant in play: {rr.min_abs_det}")

    print()
    print("# Exact rationals end to end")
    Q = om.point_tuple([[F(1, 3), F(2, 7)], ["22/7", "1/2"], [0, "5/3"]])
    print("orientation of a fraction-valued triple:", om.orient(Q.points))


if __name__ == "__main__":
    main()

"""Independent brute-force conflict enumeration (Python fractions) used to
freeze expected values in the C++ tests."""
from fractions import Fraction as F
from itertools import combinations
import sys


def orient(p, q, r):
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def on_seg(a, b, p):
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def share_non_endpoint(s, t):
    # sample-free exact test: do segments share a point that is not a common endpoint?
    a, b = s
    c, d = t
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 == o2 == 0:
        # collinear: overlap length > 0 or touching at a non-common point
        ax = 0 if a[0] != b[0] else 1
        lo = max(min(a[ax], b[ax]), min(c[ax], d[ax]))
        hi = min(max(a[ax], b[ax]), max(c[ax], d[ax]))
        if lo < hi:
            return True
        if lo > hi:
            return False
        common = {a, b} & {c, d}
        return len(common) == 0
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    common = {a, b} & {c, d}
    for p, (x, y), o in ((c, (a, b), o1), (d, (a, b), o2), (a, (c, d), o3), (b, (c, d), o4)):
        if o == 0 and on_seg(x, y, p) and p not in common:
            return True
    return False


def conflict_graph(pts, edges):
    segs = [(pts[u], pts[v]) for u, v in edges]
    return [(i, j) for i, j in combinations(range(len(edges)), 2) if share_non_endpoint(segs[i], segs[j])]


def colorable(n, es, k):
    for mask in range(k ** n):
        col = [(mask // k ** i) % k for i in range(n)]
        if all(col[i] != col[j] for i, j in es):
            return True
    return False


if __name__ == "__main__":
    K5 = list(combinations(range(5), 2))
    interior = [(F(0), F(0)), (F(4), F(0)), (F(4), F(4)), (F(0), F(4)), (F(2), F(1))]
    convex = [(F(0), F(0)), (F(4), F(0)), (F(5), F(3)), (F(2), F(5)), (F(-1), F(3))]
    for name, pts in (("interior", interior), ("convex", convex)):
        cg = conflict_graph(pts, K5)
        print(name, "conflicts", [(K5[i], K5[j]) for i, j in cg])
        print(name, "2-colorable", colorable(10, cg, 2), "3-colorable", colorable(10, cg, 3))
    K4 = list(combinations(range(4), 2))
    print("K4 convex", conflict_graph([(0, 0), (1, 0), (1, 1), (0, 1)], K4))

#!/usr/bin/env python3
"""Writes rotation systems for the three icosahedral polyhedra with 32 faces.

Vertices come from the standard coordinates; edges join nearest neighbours;
each rotation lists neighbours counterclockwise as seen from outside.
Darts 2k and 2k+1 are the two ends of edge k, which joins vertices u < v.
"""

import itertools
import math
import os
import sys

import numpy as np

PHI = (1 + math.sqrt(5)) / 2


def even_perms(p):
    x, y, z = p
    return [(x, y, z), (y, z, x), (z, x, y)]


def signed(p):
    out = set()
    for signs in itertools.product([1, -1], repeat=3):
        q = tuple(s * c for s, c in zip(signs, p))
        out.add(tuple(round(c, 12) for c in q))
    return out


def orbit(*bases):
    pts = set()
    for b in bases:
        for q in signed(b):
            for r in even_perms(q):
                pts.add(r)
    return sorted(pts)


POLYHEDRA = {
    "truncated_icosahedron": orbit(
        (0, 1, 3 * PHI), (1, 2 + PHI, 2 * PHI), (PHI, 2, PHI ** 3)
    ),
    "truncated_dodecahedron": orbit(
        (0, 1 / PHI, 2 + PHI), (1 / PHI, PHI, 2 * PHI), (PHI, 2, PHI + 1)
    ),
    "icosidodecahedron": orbit((0, 0, PHI), (0.5, PHI / 2, PHI ** 2 / 2)),
}


def rotation_system(points):
    pts = np.array(points, dtype=float)
    n = len(pts)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    np.fill_diagonal(dist, np.inf)
    edge_len = dist.min()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if abs(dist[u, v] - edge_len) < 1e-6]
    at = [[] for _ in range(n)]
    for k, (u, v) in enumerate(edges):
        at[u].append((v, 2 * k))
        at[v].append((u, 2 * k + 1))
    rotations = []
    for v in range(n):
        normal = pts[v] / np.linalg.norm(pts[v])
        ref = pts[at[v][0][0]] - pts[v]
        e1 = ref - normal * ref.dot(normal)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)
        def angle(item):
            w = pts[item[0]] - pts[v]
            return math.atan2(w.dot(e2), w.dot(e1)) % (2 * math.pi)
        rotations.append([d for _, d in sorted(at[v], key=angle)])
    return edges, rotations


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for name, points in POLYHEDRA.items():
        edges, rotations = rotation_system(points)
        lines = [f"# {name.replace('_', ' ')}: {len(points)} vertices, {len(edges)} edges",
                 "# darts 2k and 2k+1 form edge k"]
        lines += [f"V {v}: " + " ".join(map(str, rot)) for v, rot in enumerate(rotations)]
        with open(os.path.join(out_dir, f"{name}.rot"), "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(name, len(points), len(edges))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data", "polyhedra"))

"""Plane digraphs as rotation systems: building, faces, angles, editing.

Run:
  python demos/01_plane_graphs.py
"""

from orient_augment import plane_graph as pg
from orient_augment import pog_io

# A directed triangle: arcs 0->1, 1->2, 2->0.  Arc ends ("darts") are
# 2*arc for the tail end and 2*arc+1 for the head end, and each vertex
# lists its incident ends in clockwise order.
D = pg.build(3, [(0, 1), (1, 2), (2, 0)], [(0, 5), (2, 1), (4, 3)])
print("triangle:", D)
print("faces traced from the rotations:")
for f in range(D.f):
    print(f"  face {f}: vertices {D.face_vertices(f)}")
print("Euler check |V| - |A| + |F| =", D.euler_characteristic())

# Every face position is an angle: a vertex with its two flanking arcs.
print("\nangles of face 0:")
for ang in D.angle_table()[0]:
    print(f"  at vertex {ang.vertex}: preceding arc {ang.preceding_arc}, "
          f"following arc {ang.following_arc}")

# Insert a new arc between two angles of one face.  The square below has
# a single source (0) and a single sink (2); adding the chord 2 -> 0
# splits the face and makes the graph strongly connected.
S = pg.build(4, [(0, 1), (1, 2), (0, 3), (3, 2)], [(0, 4), (2, 1), (3, 7), (6, 5)])
walk = S.faces[0]
verts = [S.dart_vertex(d) for d in walk]
chord = [(walk[verts.index(2)], walk[verts.index(0)])]
S2 = pg.insert_arcs(S, chord)
print(f"\nsquare: {S.f} faces -> after chord: {S2.f} faces "
      f"(Euler still {S2.euler_characteristic()})")

# Crossing chords are rejected: 1-3 and 2-0 interleave on the boundary.
try:
    pg.insert_arcs(S, chord + [(walk[verts.index(1)], walk[verts.index(3)])])
except Exception as exc:
    print("crossing pair rejected:", type(exc).__name__)

# Graphs serialize to a one-line-per-object text format.
print("\nserialized:")
print(pog_io.write_pog(S), end="")

"""Turning planar 3-SAT formulas into augmentability instances.

Each variable becomes a ring of octagon gadgets whose two completions act
as true/false; each clause becomes a 15-vertex triangulated gadget whose
central source can only be reached when some involved literal was set the
right way.

Run:
  python demos/04_hardness_instances.py
"""

from orient_augment import hardness as hg
from orient_augment import solvers as sv
from orient_augment import strongconn as sc
from orient_augment import pog_io

# the building blocks
lit = hg.literal_gadget()
print("literal gadget: n =", lit.graph.n,
      "| inner faces:", sorted(len(w) for w in lit.graph.faces)[:-1])

cl = hg.clause_gadget()
part = sc.scc(cl.graph)
print("clause gadget: n =", cl.graph.n,
      "| source sizes:", sorted(len(part.members[c]) for c in part.sources),
      "| sink sizes:", sorted(len(part.members[c]) for c in part.sinks))

var = hg.variable_gadget(3)
print("variable gadget (3 occurrences): n =", var.graph.n)

# reduce a small formula: (x or not y or not z) and (y or z or not w)
phi = hg.find_rotations(
    4,
    [
        [(0, True), (1, False), (2, False)],
        [(1, True), (2, True), (3, False)],
    ],
)[0]
inst = hg.reduce_formula(phi)
print("\nreduced instance: n =", inst.graph.n, "m =", inst.graph.m,
      "| plane:", inst.graph.euler_characteristic() == 2)

# a satisfying assignment maps to a strong augmentation
assignment = [True, False, False, False]
X = hg.assignment_to_augmentation(phi, inst, assignment)
ok, diag = sv.verify_solution(inst.graph, X)
print(f"assignment {assignment} -> augmentation of {len(X.arcs)} arcs, "
      f"verifies: {ok}")

# instances serialize like any other plane graph
text = pog_io.write_pog(inst.graph)
print("\nserialized instance header:", text.splitlines()[0])

"""Half-braidings in the crystal limit q -> 0.

The crystal category keeps the planar diagrams but kills every zigzag, so
cups and caps no longer cancel.  Here we check its relations, search for
half-braidings on small objects, and print the finite evidence that only
sums of the unit carry one.
"""

from tlcenter import crystal as cr

rel = cr.crystal_relations_check(4)
print("circle = 1:", rel.circle, " zigzags = 0:", rel.zigzags)
print(f"composition vs word oracle: {rel.oracle_pairs} pairs, {rel.oracle_mismatches} mismatches, fiber mismatches {rel.fiber_mismatches}")

for X in (0, [0, 0], 1, 2, 3):
    rep = cr.halfbraid_solutions(X)
    print(f"object {rep.object}: {rep.conclusion}, reduced basis {rep.groebner_basis[:3]}")
    for note in rep.notes:
        print("   ", note)

ev = cr.conjecture_evidence(2)
for m, s in ev.sums.items():
    print(f"{s['object']}: off-diagonal criterion forces a split = {s['split']}")
for x in ev.idempotents:
    print(f"idempotent on {x['m']}: {x['e']}  through strands {x['through_strands']}, solvable {x['criterion_solvable']}")
print("evidence consistent:", ev.ok, "|", ev.note)

"""Walk through the structural analysis of one finite self-map.

A self-map on {0, ..., n-1} is just a list of images.  Iterating it sorts
the universe into components, each owning exactly one cycle; everything
else in a component funnels into that cycle along tree branches.  All the
order constructions downstream are phrased in terms of this decomposition,
so this demo prints every piece of it for one richly shaped example.
"""

from endolattice import components, distance, is_prohibited, period_of, split

# Elements 0 and 1 are fixed points.  2 -> 3 -> 4 -> 2 is a 3-cycle with a
# tail 5 -> 3 hanging off it, and 6 -> 7 -> 0 is a tail into the fixed
# point 0.
image = [0, 1, 3, 4, 2, 3, 7, 0]
analysis = components(image)

print("map:", {x: image[x] for x in range(len(image))})
print()

for cid, members in enumerate(analysis.components):
    print(f"component {cid}: members {list(members)}")
    print(f"  cycle {list(analysis.cycles[cid])} "
          f"(period {analysis.periods[cid]}, anchor {analysis.anchors[cid]})")

print()
print("distances to each component's anchor:")
for x in range(len(image)):
    anchor = analysis.anchors[analysis.component_id[x]]
    print(f"  d({x}, {anchor}) = {distance(x, anchor, image)}"
          f"   period of {x} = {period_of(x, analysis)}")

print()
print("concurrency classes (elements whose iterates eventually coincide):")
for cid in range(len(analysis.components)):
    print(f"  component {cid}: {analysis.classes_of(cid)}")

# Two elements of one cyclic component that sit in different classes can
# never be comparable in any order the map preserves: iterating would walk
# the inequality around the cycle and flip it.
prohibited = [(x, y)
              for x in range(len(image))
              for y in range(x + 1, len(image))
              if is_prohibited(x, y, analysis)]
print()
print("prohibited pairs:", prohibited)

cyclic, acyclic = split(image)
print()
print("cyclic part:", cyclic, " acyclic part:", acyclic)
print("fixed points:", list(analysis.fixed_points))
print("basins:", {c: list(b) for c, b in analysis.basins.items()})

"""Why the hub basins must be pinned to the ends of the acyclic chain.

Glue recipe for a map with a proper cycle: linearly order the acyclic
part, pick two fixed points p < q as hubs, put every acyclic element that
sits at or below p underneath the whole cyclic part, and every element at
or above q on top of it.  ANY monotone linear order on the acyclic part
with p below q yields a lattice this way.

The catch: the endomorphism laws need more.  If some element u of p's own
basin lands strictly between the hubs, u is incomparable to each cycle
element v, so u v v = q; but f(u) eventually falls to p, and once it does,
f(u) v f(v) collapses to f(v) itself instead of q.  The fix used by the
default construction pins each hub's basin to its end of the chain, which
keeps strictly-between elements strictly between after applying the map.

The map below fixes 0 and 1 and swaps 3 and 4, with the tail 2 -> 0.
Placing the tail element 2 between the hubs (0 < 2 < 1) breaks the join
law; pinning it below its hub (2 < 0 < 1) repairs it.
"""

from endolattice import construct, construct_paper_literal

image = [0, 1, 0, 4, 3]

print("unpinned layout 0 < 2 < 1:")
loose = construct_paper_literal(image, rstar=[0, 2, 1])
cert = loose.certificate
print("  still a lattice:", cert.is_lattice)
print("  endomorphism:", cert.is_endomorphism)
x, y = cert.witnesses["endomorphism-join"]
join = cert.join
fx, fy = image[x], image[y]
print(f"  witness pair ({x}, {y}):")
print(f"    f({x} v {y}) = f({join[x, y]}) = {image[join[x, y]]}")
print(f"    f({x}) v f({y}) = {fx} v {fy} = {join[fx, fy]}")
print()

print("pinned layout 2 < 0 < 1 (what construct does by default):")
pinned = construct(image)
print("  covers:", sorted(pinned.order.covers()))
print("  endomorphism:", pinned.certificate.is_endomorphism)
print()

same = construct_paper_literal(image, rstar=[2, 0, 1])
print("supplying the pinned layout by hand agrees:",
      same.order == pinned.order and same.certificate.is_endomorphism)

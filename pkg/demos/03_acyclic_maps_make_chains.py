"""Maps without proper cycles always admit a distributive lattice: a chain.

On a total order join and meet are max and min, so any order-preserving
map is automatically a lattice endomorphism.  The work is in building a
total order the map preserves.  Two builders are shown: the direct
branch-wise chain used by construct, and the generic pair-insertion
linearisation that can also start from a partial order you supply.
"""

from endolattice import (
    PartialOrder,
    construct,
    is_distributive,
    is_monotone,
    linear_sequence,
    szpilrajn_monotone,
)

# A tree funnelling into the fixed point 0, plus a second fixed point 3
# with its own small basin: 5 -> 3.
image = [0, 0, 1, 3, 1, 3]

result = construct(image)
print("mode:", result.mode)
print("chain, least first:", linear_sequence(result.order.rel))
print("block layout:", [(b.kind, list(b.elements)) for b in result.trace.blocks])
print("distributive:", is_distributive(result.certificate))
print("endomorphism:", result.certificate.is_endomorphism)
print()

# The generic linearisation honours pre-existing constraints.  Ask for
# 4 below 2 up front; the insertion loop closes every choice under the
# map, so the finished chain still satisfies x <= y => f(x) <= f(y).
seed = PartialOrder.from_pairs(6, [(4, 2)])
rel = szpilrajn_monotone(seed, image)
seq = linear_sequence(rel)
print("seeded chain:", seq)
print("seed pair 4 <= 2 kept:", bool(rel[4, 2]))
print("map monotone along it:", is_monotone(image, rel)[0])

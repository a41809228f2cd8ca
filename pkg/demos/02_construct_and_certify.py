"""Build a lattice that turns a cyclic self-map into a lattice endomorphism.

The map here fixes 0 and 1 and cycles 2 -> 3 -> 4 -> 2.  A lattice
compatible with it must keep the cycle an antichain, and folding join or
meet over the cycle must land on a fixed point.  The construction therefore
glues the cycle between the two fixed points: the result is the classic
"bottom, top, antichain in the middle" lattice, and the attached
certificate re-checks every law rather than trusting the theory.
"""

import numpy as np

from endolattice import (
    construct,
    decide,
    is_distributive,
    is_isomorphic_to_mn,
    is_modular,
)
from endolattice.cli import render_hasse_dot

image = [0, 1, 3, 4, 2]

decision = decide(image)
print("exists:", decision.exists, " reason:", decision.reason)
print("evidence:", decision.to_json_dict()["evidence"])
print()

result = construct(image)
print("mode:", result.mode)
print("hubs: low =", result.trace.hub_low, " high =", result.trace.hub_high)
print("cover relations:", sorted(result.order.covers()))
print()

cert = result.certificate
print("certificate:")
for law, passed in sorted(cert.law_report.items()):
    print(f"  {law}: {'ok' if passed else 'FAILED'}")
print("join table:")
print(np.asarray(cert.join))
print("meet table:")
print(np.asarray(cert.meet))
print()

# The shape is forced: bottom, top, and the cycle as a 3-element antichain.
print("isomorphic to bottom+top+3-antichain:", is_isomorphic_to_mn(cert, 3))
print("modular:", is_modular(cert), " distributive:", is_distributive(cert))
print()
print("DOT diagram (hubs coloured):")
print(render_hasse_dot(result, names={0: "p", 1: "q"}))

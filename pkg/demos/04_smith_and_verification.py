# Smith normal form and the theorem checks
#
# The engine works over Python integers.  Large boundary matrices go
# through a sparse elimination; with transforms requested, a dense one
# also returns U and V with U M V diagonal.

import numpy as np

from rackhom import make_cyclic, make_dihedral, make_fr4, run_suite, smith_normal_form

M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
sf = smith_normal_form(M, want_transforms=True)
print("invariant factors", sf.invariant_factors)
U, V = np.array(sf.U, dtype=object), np.array(sf.V, dtype=object)
print(U.dot(np.array(M, dtype=object)).dot(V))

# The suites check the chain-level identities tuple by tuple and report
# the first counterexample they meet.

for X in (make_dihedral(5), make_fr4()):
    for rep in run_suite(X, "all", 3):
        print("\n".join(rep.lines()[:3]))

# cyclic:3 has one orbit but N(a, b) is not constant on it.  The main
# theorem does not apply, and the homotopy identity already breaks at
# degree 2.

for rep in run_suite(make_cyclic(3), "main-theorem", 3) + run_suite(make_cyclic(3), "homotopy", 2):
    print("\n".join(rep.lines()))

# Chains, faces and the splitting maps
#
# C^R_n is free on n-tuples.  Degenerate tuples (two equal neighbours)
# span the subcomplex C^D; the quotient is C^Q.

from rackhom import FormalChain, alpha, boundary, build_complex, face, make_dihedral, phi, psi
from rackhom.chains import homotopy_D

R3 = make_dihedral(3)

# The two face maps at position i: delete x_i, or act on x_1..x_{i-1}
# by x_i first and then delete it.

print(face(R3, (0, 1, 2), 2, 0), face(R3, (0, 1, 2), 2, 1))

# The boundary is the alternating sum of the differences of faces.

c = FormalChain.of((0, 1, 2))
print("d", c, "=", boundary(R3, c))
print("d d c =", boundary(R3, boundary(R3, c)))

# alpha kills degenerate chains and c - alpha(c) is always degenerate,
# which is what splits C^R = C^D + C^Q for a quandle.

print("alpha(0,1,2) =", alpha(R3, c))
print("alpha(1,1,2) =", alpha(R3, FormalChain.of((1, 1, 2))))

# phi^j acts on the first j entries by every possible y; D^j inserts an
# extra entry.  Up to sign, d D^j + D^j d = |X| phi^(j-1) - phi^j.

x = FormalChain.of((0, 1))
print("phi^1(0,1) =", phi(R3, 1, x))
print("D^1(0,1) =", homotopy_D(R3, 1, x))

# On a rack with homogeneous orbits, psi sends orbit tuples to cycles.

z = psi(R3, (0, 0))
print("psi(w, w) =", z, " boundary:", boundary(R3, z))

# Boundary matrices come out of build_complex in lexicographic bases.

cx = build_complex(R3, "Q", 3)
for n in range(1, 4):
    print(f"C^Q_{n}: rank {cx.rank(n)}, d_{n} has {cx.boundary_matrix(n).nnz} nonzeros")

# Racks, orbits and isomorphisms
#
# A rack is a finite set with an operation a^b whose right translations
# are permutations and which satisfies (a^b)^c = (a^c)^(b^c).  Everything
# here lives on {0, ..., n-1} and is stored as an n x n table.

from rackhom import (
    find_isomorphism, homogeneity_report, make_cyclic, make_dihedral, make_fr4,
    orbit_partition, orbit_rack, parse_rack_spec, prop41_map, prop42_map,
)

# The dihedral rack R_n has a^b = 2b - a mod n.

R5 = make_dihedral(5)
print(R5.label, "quandle:", R5.is_quandle)
print(R5.array)

# Orbits are the classes under the group generated by the translations.
# R_n is connected for odd n and splits into evens and odds for even n.

for n in range(3, 9):
    part = orbit_partition(make_dihedral(n))
    print(f"R_{n}: {part.count} orbit(s), sizes {part.sizes}")

# N(a, b) counts the c with a^c = b.  When it is constant on each orbit the
# rack has homogeneous orbits.  The cyclic rack a^b = a + 1 does not.

print(homogeneity_report(make_cyclic(3)))
print(homogeneity_report(make_fr4()))

# Alexander racks Lambda_n/(h) use a^b = t a + (1 - t) b in Z_n[t]/(h).
# Elements are coefficient vectors (c_0, c_1, ...), value sum c_i n^i.

X = parse_rack_spec("alexander:3:t^2+t+1")
print(X.label, "has", orbit_partition(X).count, "orbits")
orb, pi = orbit_rack(X)
print("projection onto", orb.label, ":", pi.map)

# Brute-force isomorphism search returns the lexicographically least
# witness, or a falsy NotIsomorphic token once the search is exhausted.

print(find_isomorphism(make_dihedral(4), parse_rack_spec("alexander:2:t^2+1")).map)
print(find_isomorphism(parse_rack_spec("alexander:5:t-2"), parse_rack_spec("alexander:5:t-3")))

# Two explicit families of isomorphisms, checked on every pair before
# they are handed back.

f = prop41_map(3, 2)
print(f.source.label, "->", f.target.label, f.map)
g = prop42_map(4)
print(g.source.label, "->", g.target.label, g.map, "involution:",
      all(g(g(a)) == a for a in range(8)))

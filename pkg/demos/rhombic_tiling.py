# The domain C for N = 3 is a rhombic dodecahedron, and its lattice translates tile space.
import numpy as np

from dnchain.alcove import fold_to_domain, reduce_to_alcove, rhombic_dodecahedron, tiling_check

poly = rhombic_dodecahedron()
print(len(poly.vertices), "vertices,", len(poly.faces), "faces,", len(poly.edges()), "edges")
a, b = poly.edges()[0]
print("edge / pi:", np.linalg.norm(poly.vertices[a] - poly.vertices[b]) / np.pi)

# fold an arbitrary point back, then reduce it into the alcove
x = np.array([7.0, -2.5, 11.0])
fold = fold_to_domain(x)
print("lattice vector", fold.t, "representative", np.round(fold.rep, 4))
w, alc = reduce_to_alcove(fold.rep)
print("alcove point", np.round(alc, 4), "via", w)

rep = tiling_check(3, 20000, seed=0)
print(rep)

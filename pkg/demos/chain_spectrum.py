# Exact diagonalization of the su(m) D_N chain against its closed-form partition function.
import numpy as np

from dnchain.eigen import spectral_qpoly, sym_eigenvalues
from dnchain.lattice import dn_sites
from dnchain.qseries import chain_partition
from dnchain.spinops import SpinConfig, build_dn_chain

N, m = 5, 2

# the sites: two pinned ends and N-2 interior points from Jacobi zeros
sites = dn_sites(N)
print("theta / pi:", np.round(sites.theta / np.pi, 6))
print("equilibrium residual:", sites.residual)

H = build_dn_chain(sites, SpinConfig(m, N))
spec = sym_eigenvalues(H)
print("dimension:", spec.dim)
print("lowest levels:", np.round(spec.values[:6], 10))

# the spectrum is integral, so it packs into a polynomial in q
numeric = spectral_qpoly(spec)
exact = chain_partition(N, m)
print("from diagonalization:", numeric)
print("closed form:         ", exact)
print("equal:", numeric == exact)

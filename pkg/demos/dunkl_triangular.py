# H' = sum_k J_k^2 on plane waves is triangular once the basis is ordered by sorted key.
from fractions import Fraction

from dnchain.dunkl import collocation_check, dunkl_apply, ende, hprime_matrix, sorted_key

# J_1 on exp(2 i x_1): one diagonal term, coefficients linear in a
for mi, c in dunkl_apply(2, (4, 0, 0)).items():
    print(mi.nu, c)

# symbolic check over the whole truncation set
mat = hprime_matrix(bound=4, delta=0, N=3)
print("basis size", len(mat.basis), "nonzero entries", len(mat.entries))

nu = (2, -4, 0)
print("diagonal at", nu, "=", mat.entry(nu, nu), "expected", ende(sorted_key(nu), 3))

lower = [(col, val) for (row, col), val in mat.entries.items() if row == nu and col != nu]
print("off-diagonal images of", nu, ":", len(lower), "all with smaller keys")

# the same expansion evaluated numerically against the gauge-transformed operator
print("collocation error:", collocation_check(1, (3, -1, 1), trials=20, a=Fraction(7, 3)))

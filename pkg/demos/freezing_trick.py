# Freezing trick: the chain partition function as a quotient of a -> infinity series.
from dnchain.qseries import (
    chain_partition,
    dyn_partition_series,
    enumerate_spectrum_series,
    scalar_partition_series,
)

N, m = 4, 3
Z = chain_partition(N, m)
cutoff = Z.degree() + 5

dyn = dyn_partition_series(N, m, cutoff)
sc = scalar_partition_series(N, cutoff)

# closed form vs a brute-force sum over quantum numbers and spin states
print("dynamical series matches enumeration:", dyn == enumerate_spectrum_series(N, m, cutoff))

quotient = dyn / sc
print("Z_dyn / Z_sc:", quotient.to_json())
print("chain Z     :", Z.to_json())
print("first difference:", quotient.first_difference(Z))

# Z(1) counts all m^N spin states
print("Z(1) =", Z(1), "= m^N =", m ** N)

"""Su(m) Haldane-Shastry spin chain of D_N type: sites, Hamiltonian, exact partition functions,
Dunkl-operator triangularization and alcove geometry."""
from .alcove import classify, fold_to_domain, periodic_exponent, reduce_to_alcove, tiling_check
from .dunkl import APoly, Multiindex, collocation_check, dunkl_apply, hprime_matrix, lambda_nu_k, order_compare
from .eigen import Spectrum, spectral_qpoly, sym_eigenvalues
from .lattice import BcSites, DnSites, bc_sites, dn_sites, equilibrium_residual
from .orthopoly import JacobiParams, RootSet, jacobi_eval, jacobi_roots
from .qpoly import QPolynomial, QSeries
from .qseries import (
    chain_partition,
    compositions,
    degeneracy_count,
    dyn_partition_series,
    freezing_consistency,
    k_exponents,
    q_l,
    scalar_partition_series,
)
from .spinops import SpinConfig, build_bc_chain, build_dn_chain

__version__ = "0.1.0"

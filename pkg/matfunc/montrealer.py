import numpy as np

from config import Config
from generators.matchings import index_arrays
from matfunc.basicas import as_square_matrix, block_ell, check_guard, fdiag, x_matrix
from matfunc.hafnian import sum_over_matchings
from matfunc.potencias import alternating_sum, restricted, trace_of_power
from models.errores import DomainError


def _preparar(a, limite):
    a = as_square_matrix(a)
    ell = block_ell(a)
    check_guard(ell, limite, "ell")
    return a, ell


def _preparar_zeta(zeta_conj, ell):
    z = np.asarray(zeta_conj, dtype=complex)
    if z.shape != (2 * ell,):
        raise DomainError(f"zeta_conj debe tener {2 * ell} entradas")
    return z


def montrealer_ref(a) -> complex:
    """mtl A = Σ_{β∈RPMP(2ℓ)} Π A_ij, por enumeración"""
    a, ell = _preparar(a, Config.MAX_ELL_MTL_REF)
    filas, columnas = index_arrays("rpmp", ell)
    return sum_over_matchings(a, filas, columnas)


def loop_montrealer_ref(a, zeta_conj) -> complex:
    """lmtl de fdiag(A, ζ̄*) sumando sobre RSPM(2ℓ)"""
    a, ell = _preparar(a, Config.MAX_ELL_LMTL_REF)
    z = _preparar_zeta(zeta_conj, ell)
    filas, columnas = index_arrays("rspm", ell)
    return sum_over_matchings(fdiag(a, z), filas, columnas)


def montrealer_fast(a) -> complex:
    """
    mtl A = (1/2ℓ) Σ_{S⊆[ℓ]} (-1)^{|S|+ℓ} tr(Σ[S]^ℓ) con Σ = X A.
    """
    a, ell = _preparar(a, Config.MAX_ELL_MTL_RAPIDO)
    sigma = x_matrix(ell) @ a

    def termino(idx):
        return trace_of_power(restricted(sigma, idx), ell) / (2 * ell)

    return alternating_sum(ell, termino)


def loop_montrealer_fast(a, zeta_conj) -> complex:
    """
    Montrealer con lazos: a cada término de traza se suma
    ½ ζ̄[S]† Σ[S]^{ℓ-1} ζ̄[S]. Con ζ̄ = X ζ̄* el término es holomorfo en
    zeta_conj y vale para cualquier A simétrica. Las potencias menores
    que ℓ-1 se cancelan en la suma alternante y no se evalúan.
    """
    a, ell = _preparar(a, Config.MAX_ELL_LMTL_RAPIDO)
    z = _preparar_zeta(zeta_conj, ell)
    x = x_matrix(ell)
    sigma = x @ a
    xz = x @ z
    if not np.any(z):
        return montrealer_fast(a)

    def termino(idx):
        b = restricted(sigma, idx)
        potencia = np.linalg.matrix_power(b, ell - 1)
        traza = np.trace(potencia @ b, axis1=1, axis2=2) / (2 * ell)
        lazo = 0.5 * np.einsum("bi,bij,bj->b", z[idx], potencia, xz[idx])
        return traza + lazo

    return alternating_sum(ell, termino)


def bipartite_embedding(b) -> np.ndarray:
    """[[0, B], [Bᵀ, 0]]"""
    b = as_square_matrix(b)
    cero = np.zeros_like(b)
    return np.block([[cero, b], [b.T, cero]])


def hamiltonian_cycle_fast(b) -> complex:
    """ham B a través de mtl [[0, B], [Bᵀ, 0]]"""
    return montrealer_fast(bipartite_embedding(b))


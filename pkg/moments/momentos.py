from itertools import product

import numpy as np

from config import Config
from gaussian.estados import adjacency, zeta_conj
from matfunc.basicas import fdiag, reduction, reduction_vector
from matfunc.hafnian import loop_hafnian_fast
from models.dominio import GaussianState, ModePattern
from models.errores import DomainError, NumericalConsistencyError
from moments.combinatoria import stirling2


def as_real(valor: complex, tol=Config.TOL_IMAGINARIA) -> float:
    """Parte real de un observable, verificando que el residuo imaginario sea pequeño"""
    valor = complex(valor)
    if abs(valor.imag) > tol * (1 + abs(valor)):
        raise NumericalConsistencyError(
            f"Residuo imaginario {valor.imag:.3e} en un observable real"
        )
    return valor.real


def as_pattern(pattern, ell: int) -> ModePattern:
    if not isinstance(pattern, ModePattern):
        pattern = ModePattern(tuple(pattern))
    if len(pattern.p) != ell:
        raise DomainError(f"El patrón tiene {len(pattern.p)} entradas y el estado {ell} modos")
    return pattern


def photon_moment(state: GaussianState, pattern) -> float:
    """
    ⟨n̂_1^{p_1} ... n̂_ℓ^{p_ℓ}⟩ como suma ponderada por números de Stirling
    de hafnianos con lazos de fdiag(A_{j⊕j}, ζ̄*_{j⊕j}).
    """
    pattern = as_pattern(pattern, state.ell)
    a = adjacency(state)
    zc = zeta_conj(state)
    rangos = [range(1, p + 1) if p > 0 else (0,) for p in pattern.p]

    total = 0j
    for j in product(*rangos):
        peso = 1
        for p_i, j_i in zip(pattern.p, j):
            if p_i > 0:
                peso *= stirling2(p_i, j_i)
        k = np.concatenate([j, j])
        q = fdiag(reduction(a, k), reduction_vector(zc, k))
        total += peso * loop_hafnian_fast(q)
    return as_real(total)

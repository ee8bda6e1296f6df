import numpy as np

from config import Config
from generators.matchings import index_arrays
from matfunc.basicas import as_square_matrix, check_guard, check_symmetric, x_matrix
from matfunc.potencias import alternating_sum, exp_coefficient, power_trace_terms, restricted
from models.errores import DomainError


def sum_over_matchings(q: np.ndarray, filas, columnas, lote=1 << 16) -> complex:
    """
    Σ_β Π_{(i,j)∈β} q_ij con los índices de matching_index_arrays.
    La fila/columna extra vale 1 para los factores de relleno.
    """
    m = q.shape[0]
    extendida = np.ones((m + 1, m + 1), dtype=complex)
    extendida[:m, :m] = q
    partes = []
    for inicio in range(0, filas.shape[0], lote):
        f = filas[inicio:inicio + lote]
        c = columnas[inicio:inicio + lote]
        partes.append(np.prod(extendida[f, c], axis=1))
    if not partes:
        return 0j
    return complex(np.sum(np.concatenate(partes)))


def _verificar_entrada(q, limite, offdiag_only):
    q = as_square_matrix(q)
    m = q.shape[0]
    if m % 2:
        raise DomainError(f"La dimensión {m} debe ser par")
    check_guard(m, limite, "dim")
    check_symmetric(q, offdiag_only=offdiag_only)
    return q


def hafnian(q) -> complex:
    """Suma sobre PMP(m) de los productos q_ij; la diagonal se ignora"""
    q = _verificar_entrada(q, Config.MAX_HAFNIAN, offdiag_only=True)
    filas, columnas = index_arrays("pmp", q.shape[0])
    return sum_over_matchings(q, filas, columnas)


def loop_hafnian(q) -> complex:
    """Suma sobre SPM(m); los lazos toman su peso de la diagonal"""
    q = _verificar_entrada(q, Config.MAX_LOOP_HAFNIAN, offdiag_only=True)
    filas, columnas = index_arrays("spm", q.shape[0])
    return sum_over_matchings(q, filas, columnas)


def loop_hafnian_fast(q, loops=True) -> complex:
    """
    Hafniano con lazos por trazas de potencias sobre los subconjuntos
    del emparejamiento {(i, i+m/2)}: O(2^{m/2} m^4).
    """
    q = _verificar_entrada(q, Config.MAX_HAFNIAN_RAPIDO, offdiag_only=True)
    n = q.shape[0]
    m = n // 2
    diagonal = np.diag(q).copy() if loops else np.zeros(n, dtype=complex)
    sin_diagonal = q - np.diag(np.diag(q))
    x = x_matrix(m)
    c = x @ sin_diagonal
    xd = x @ diagonal
    con_lazos = bool(np.any(diagonal != 0))

    def termino(idx):
        b = restricted(c, idx)
        if con_lazos:
            terminos = power_trace_terms(b, diagonal[idx], xd[idx], m)
        else:
            terminos = power_trace_terms(b, None, None, m)
        return exp_coefficient(terminos, m)

    return alternating_sum(m, termino)


def hafnian_fast(q) -> complex:
    """Hafniano por trazas de potencias (sin lazos)"""
    return loop_hafnian_fast(q, loops=False)

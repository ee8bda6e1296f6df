"""
Núcleo de trazas de potencias sobre subconjuntos del emparejamiento
fijo {(i, i+m)}.

Para cada subconjunto S ⊆ [m] se usa la submatriz que conserva las
filas y columnas S ∪ (S+m). Los subconjuntos se procesan en lotes del
mismo tamaño apilados para numpy, en orden fijo (tamaño, luego orden
lexicográfico), y la suma alternante final es un np.sum por pares sobre
el vector completo de términos, de modo que el resultado no depende del
tamaño de lote.
"""
from itertools import combinations, islice

import numpy as np

from config import Config


def subset_batches(m: int, lote: int = Config.LOTE_SUBCONJUNTOS):
    """Genera (k, idx) con idx de forma (lote, 2k): filas S ∪ (S+m)"""
    for k in range(1, m + 1):
        combos = combinations(range(m), k)
        while True:
            bloque = list(islice(combos, lote))
            if not bloque:
                break
            s = np.array(bloque, dtype=np.intp)
            yield k, np.concatenate([s, s + m], axis=1)


def restricted(c: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """Pila de submatrices c[idx_b, idx_b]"""
    return c[idx[:, :, None], idx[:, None, :]]


def alternating_sum(m: int, termino, lote: int = Config.LOTE_SUBCONJUNTOS) -> complex:
    """Σ_{∅≠S⊆[m]} (-1)^{m-|S|} termino(S); el subconjunto vacío aporta 0"""
    partes = []
    for k, idx in subset_batches(m, lote):
        signo = -1.0 if (m - k) % 2 else 1.0
        partes.append(signo * termino(idx))
    if not partes:
        return 0j
    return complex(np.sum(np.concatenate(partes)))


def trace_of_power(b: np.ndarray, p: int) -> np.ndarray:
    """tr(B^p) para cada matriz de la pila (potencia por cuadrados)"""
    return np.trace(np.linalg.matrix_power(b, p), axis1=1, axis2=2)


def power_trace_terms(b, u, w, p):
    """
    Para j = 1..p devuelve tr(B^j)/(2j) + ½ uᵀ B^{j-1} w en una matriz
    de forma (lote, p). u y w pueden ser None (sin lazos).
    """
    lote = b.shape[0]
    terminos = np.zeros((lote, p), dtype=complex)
    potencia = np.broadcast_to(np.eye(b.shape[1], dtype=complex), b.shape)
    v = w
    for j in range(1, p + 1):
        if u is not None:
            terminos[:, j - 1] += 0.5 * np.einsum("bi,bi->b", u, v)
            v = np.einsum("bij,bj->bi", b, v)
        potencia = potencia @ b
        terminos[:, j - 1] += np.trace(potencia, axis1=1, axis2=2) / (2 * j)
    return terminos


def exp_coefficient(c: np.ndarray, n: int) -> np.ndarray:
    """
    [λ^n] exp(Σ_j c_j λ^j) por lote, con la recurrencia
    n f_n = Σ_{j=1}^{n} j c_j f_{n-j}.
    """
    lote = c.shape[0]
    f = np.zeros((lote, n + 1), dtype=complex)
    f[:, 0] = 1.0
    for k in range(1, n + 1):
        acumulado = np.zeros(lote, dtype=complex)
        for j in range(1, k + 1):
            acumulado += j * c[:, j - 1] * f[:, k - j]
        f[:, k] = acumulado / k
    return f[:, n]

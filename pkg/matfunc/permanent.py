from itertools import islice, permutations

import numpy as np

from config import Config
from matfunc.basicas import as_square_matrix, check_guard


def permanent(b) -> complex:
    """
    Permanente por la fórmula de Ryser recorriendo los subconjuntos de
    columnas en código Gray: O(2^n n).
    """
    b = as_square_matrix(b)
    n = b.shape[0]
    check_guard(n, Config.MAX_PERMANENT, "dim")

    sumas = np.zeros(n, dtype=complex)
    elegidas = np.zeros(n, dtype=bool)
    total = 0j
    # (-1)^{n-|S|} con |S| = 0 al inicio
    signo = -1.0 if n % 2 else 1.0
    for paso in range(1, 1 << n):
        # la columna que cambia es el bit menos significativo de paso
        col = (paso & -paso).bit_length() - 1
        if elegidas[col]:
            sumas -= b[:, col]
        else:
            sumas += b[:, col]
        elegidas[col] = not elegidas[col]
        signo = -signo
        total += signo * np.prod(sumas)
    return complex(total)


def hamiltonian_cycle_poly(b, lote=1 << 15) -> complex:
    """
    Σ sobre las (n-1)! permutaciones de un solo ciclo de Π b_{i,σ(i)}.
    Los ciclos se enumeran como 0 → c_1 → ... → c_{n-1} → 0.
    """
    b = as_square_matrix(b)
    n = b.shape[0]
    check_guard(n, Config.MAX_HAM, "dim")
    if n == 1:
        return complex(b[0, 0])

    filas = np.arange(n)
    ordenes = permutations(range(1, n))
    partes = []
    while True:
        bloque = list(islice(ordenes, lote))
        if not bloque:
            break
        ciclo = np.zeros((len(bloque), n + 1), dtype=np.intp)
        ciclo[:, 1:n] = np.array(bloque, dtype=np.intp)
        sigma = np.empty((len(bloque), n), dtype=np.intp)
        np.put_along_axis(sigma, ciclo[:, :n], ciclo[:, 1:], axis=1)
        partes.append(np.prod(b[filas, sigma], axis=1))
    return complex(np.sum(np.concatenate(partes)))

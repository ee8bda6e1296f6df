import numpy as np

from config import Config
from models.errores import DomainError, ResourceError


def as_square_matrix(a) -> np.ndarray:
    """Copia compleja de a; verifica que sea cuadrada y finita"""
    a = np.array(a, dtype=complex, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"Se esperaba una matriz cuadrada, forma {a.shape}")
    if a.shape[0] == 0:
        raise DomainError("La dimensión debe ser positiva")
    if not np.all(np.isfinite(a)):
        raise DomainError("La matriz contiene NaN o Inf")
    return a


def block_ell(a: np.ndarray) -> int:
    """ℓ de una matriz de adyacencia por bloques de dimensión 2ℓ"""
    dim = a.shape[0]
    if dim % 2:
        raise DomainError(f"Una matriz por bloques necesita dimensión par, no {dim}")
    return dim // 2


def check_guard(valor, limite, que):
    if valor > limite:
        raise ResourceError(f"{que}={valor} supera el límite {limite}")


def check_symmetric(a: np.ndarray, tol=Config.TOL_SIMETRIA, offdiag_only=False):
    diferencia = a - a.T
    if offdiag_only:
        np.fill_diagonal(diferencia, 0)
    escala = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(diferencia)) > tol * escala:
        raise DomainError("La matriz no es simétrica dentro de la tolerancia")


def fdiag(a, v) -> np.ndarray:
    """Copia de a con la diagonal reemplazada por v"""
    a = as_square_matrix(a)
    v = np.asarray(v, dtype=complex)
    if v.shape != (a.shape[0],):
        raise DomainError(
            f"El vector tiene {v.shape} entradas y la matriz dimensión {a.shape[0]}"
        )
    np.fill_diagonal(a, v)
    return a


def _indices_repetidos(k, dim):
    k = np.asarray(k, dtype=int)
    if k.shape != (dim,):
        raise DomainError(f"El vector de repeticiones debe tener {dim} entradas")
    if np.any(k < 0):
        raise DomainError("Las repeticiones deben ser no negativas")
    check_guard(int(k.sum()), Config.MAX_REDUCCION, "Σk")
    return np.repeat(np.arange(dim), k)


def reduction(a, k) -> np.ndarray:
    """Repite la fila y columna i de a un total de k_i veces, en orden de índice"""
    a = as_square_matrix(a)
    idx = _indices_repetidos(k, a.shape[0])
    return a[np.ix_(idx, idx)]


def reduction_vector(v, k) -> np.ndarray:
    """Análogo vectorial de reduction"""
    v = np.asarray(v, dtype=complex)
    idx = _indices_repetidos(k, v.shape[0])
    return v[idx]


def x_matrix(ell: int) -> np.ndarray:
    """X = [[0, I], [I, 0]]"""
    cero = np.zeros((ell, ell))
    uno = np.eye(ell)
    return np.block([[cero, uno], [uno, cero]])

from math import comb, factorial
from typing import List

from config import Config
from models.errores import DomainError, NumericalConsistencyError, ResourceError
from models.tda import SetPartition

MAX_INT64 = (1 << 63) - 1


def stirling2(m: int, n: int) -> int:
    """
    Número de Stirling de segunda especie por la fórmula
    Σ_k C(n,k) k^m (-1)^{n-k} / n!, en aritmética entera exacta.
    """
    if not 1 <= n <= m <= Config.MAX_STIRLING:
        raise DomainError(
            f"stirling2({m}, {n}) requiere 1 ≤ n ≤ m ≤ {Config.MAX_STIRLING}"
        )
    suma = sum(comb(n, k) * k**m * (-1) ** (n - k) for k in range(1, n + 1))
    valor, resto = divmod(suma, factorial(n))
    if resto:
        raise NumericalConsistencyError(f"stirling2({m}, {n}) no es entero")
    if valor > MAX_INT64:
        raise NumericalConsistencyError(f"stirling2({m}, {n}) desborda 64 bits")
    return valor


def _cadenas_crecimiento(n):
    """Cadenas de crecimiento restringido a_0 = 0, a_i ≤ max(a_<i) + 1"""
    cadena = [0] * n

    def extender(i, maximo):
        if i == n:
            yield list(cadena)
            return
        for v in range(maximo + 2):
            cadena[i] = v
            yield from extender(i + 1, max(maximo, v))

    if n == 0:
        return
    yield from extender(1, 0)


def set_partitions(gamma) -> List[SetPartition]:
    """
    Particiones de las posiciones 0..|γ|-1 de γ; hay Bell(|γ|) de ellas.
    Acepta el multiconjunto γ o directamente su tamaño.
    """
    n = gamma if isinstance(gamma, int) else len(gamma)
    if n < 1:
        raise DomainError("γ debe tener al menos un elemento")
    if n > Config.MAX_PARTICION:
        raise ResourceError(f"|γ|={n} supera el límite {Config.MAX_PARTICION}")
    particiones = []
    for cadena in _cadenas_crecimiento(n):
        bloques = [[] for _ in range(max(cadena) + 1)]
        for posicion, bloque in enumerate(cadena):
            bloques[bloque].append(posicion)
        particiones.append(SetPartition(tuple(tuple(b) for b in bloques)))
    return particiones


def bell(n: int) -> int:
    """Números de Bell por la recurrencia B_{n+1} = Σ_k C(n,k) B_k"""
    b = [1]
    for i in range(n):
        b.append(sum(comb(i, k) * b[k] for k in range(i + 1)))
    return b[n]

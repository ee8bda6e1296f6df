"""
Generación de los conjuntos PMP, SPM, RPMP y RSPM sobre vértices 0..m-1.

Los índices son 0-based; PairMatching.to_one_based da la notación 1-based.
"""
from functools import lru_cache
from itertools import permutations, product
from typing import List

import numpy as np

from config import Config
from models.errores import DomainError, ResourceError
from models.tda import PairMatching, WalkBase


def _verificar_par(m, limite):
    if m <= 0 or m % 2:
        raise DomainError(f"m={m} debe ser par y positivo")
    if m > limite:
        raise ResourceError(f"m={m} supera el límite de generación {limite}")


def _emparejar(vertices, con_lazos):
    """Recorre los emparejamientos fijando siempre el primer vértice libre"""
    if not vertices:
        yield [], []
        return
    primero, resto = vertices[0], vertices[1:]
    if con_lazos:
        for pares, lazos in _emparejar(resto, con_lazos):
            yield pares, [primero] + lazos
    for idx, otro in enumerate(resto):
        restantes = resto[:idx] + resto[idx + 1:]
        for pares, lazos in _emparejar(restantes, con_lazos):
            yield [(primero, otro)] + pares, lazos


def gen_pmp(m: int) -> List[PairMatching]:
    """Emparejamientos perfectos sin lazos de m vértices; (m-1)!! elementos"""
    _verificar_par(m, Config.MAX_PMP)
    return [
        PairMatching.canonical(pares)
        for pares, _ in _emparejar(tuple(range(m)), con_lazos=False)
    ]


def gen_spm(m: int) -> List[PairMatching]:
    """Emparejamientos con lazos (involuciones de m elementos); T(m) elementos"""
    _verificar_par(m, Config.MAX_SPM)
    return [
        PairMatching.canonical(pares, lazos)
        for pares, lazos in _emparejar(tuple(range(m)), con_lazos=True)
    ]


def _verificar_ell(ell):
    if ell < 1:
        raise DomainError("ell debe ser positivo")
    if ell > Config.MAX_ELL_RPMP:
        raise ResourceError(
            f"ell={ell} supera el límite de generación {Config.MAX_ELL_RPMP}"
        )


def fiducial(ell: int) -> PairMatching:
    """X_fid = {(0, ℓ+1), (1, ℓ+2), ..., (ℓ-2, 2ℓ-1), (ℓ-1, ℓ)}"""
    pares = [(k, k + ell + 1) for k in range(ell - 1)] + [(ell - 1, ell)]
    return PairMatching.canonical(pares)


def gen_rpmp(ell: int) -> List[PairMatching]:
    """
    Emparejamientos restringidos: órbita de X_fid bajo los intercambios
    k <-> k+ℓ (k = 1..ℓ-1) y las permutaciones conjuntas de los modos
    1..ℓ-1, que dejan fijo el modo 0. Se generan (2ℓ-2)!! elementos.
    """
    _verificar_ell(ell)
    base = fiducial(ell)
    resultado = []
    vistos = set()
    for intercambios in product((False, True), repeat=ell - 1):
        for perm in permutations(range(1, ell)):
            mapa = list(range(2 * ell))
            for origen, destino in zip(range(1, ell), perm):
                arriba, abajo = destino, destino + ell
                if intercambios[destino - 1]:
                    arriba, abajo = abajo, arriba
                mapa[origen] = arriba
                mapa[origen + ell] = abajo
            x = PairMatching.canonical((mapa[i], mapa[j]) for i, j in base.pairs)
            if x not in vistos:
                vistos.add(x)
                resultado.append(x)
    return resultado


def gen_rspm(ell: int) -> List[PairMatching]:
    """RPMP más cada elemento con una de sus ℓ aristas rota en dos lazos"""
    resultado = []
    vistos = set()

    def agregar(x):
        if x not in vistos:
            vistos.add(x)
            resultado.append(x)

    for x in gen_rpmp(ell):
        agregar(x)
        for arista in x.pairs:
            agregar(x.replace_edge_by_loops(arista))
    return resultado


def is_y_alternating(x: PairMatching, ell: int) -> bool:
    """
    True si x ∪ Y forma un único ciclo alternante (sin lazos) o un único
    camino alternante abierto cuyos extremos son los dos lazos de x.
    """
    base = WalkBase(ell)
    m = 2 * ell
    pareja = x.partner(m)

    if not x.loops:
        actual, visitados = 0, 0
        while True:
            actual = base.y_partner(pareja[actual])
            visitados += 2
            if actual == 0:
                return visitados == m
            if visitados >= m:
                return False

    if len(x.loops) != 2:
        return False
    inicio, fin = x.loops
    actual, visitados = inicio, 1
    while True:
        actual = base.y_partner(actual)
        visitados += 1
        if pareja[actual] == actual:
            return actual == fin and visitados == m
        actual = pareja[actual]
        visitados += 1
        if visitados > m:
            return False


@lru_cache(maxsize=32)
def _indices_cacheados(nombre, arg):
    generador = {"pmp": gen_pmp, "spm": gen_spm, "rpmp": gen_rpmp, "rspm": gen_rspm}
    matchings = generador[nombre](arg)
    m = arg if nombre in ("pmp", "spm") else 2 * arg
    return matching_index_arrays(matchings, m)


def matching_index_arrays(matchings, m):
    """
    Filas y columnas de los factores de cada emparejamiento, rellenadas
    con el índice m (que apunta a un 1 en la matriz extendida). Un lazo
    en v aporta el factor (v, v).
    """
    ancho = m
    filas = np.full((len(matchings), ancho), m, dtype=np.int16)
    columnas = np.full((len(matchings), ancho), m, dtype=np.int16)
    for fila, x in enumerate(matchings):
        factores = list(x.pairs) + [(v, v) for v in x.loops]
        for col, (i, j) in enumerate(factores):
            filas[fila, col] = i
            columnas[fila, col] = j
    filas.setflags(write=False)
    columnas.setflags(write=False)
    return filas, columnas


def index_arrays(nombre: str, arg: int):
    """Índices cacheados de gen_<nombre>(arg)"""
    return _indices_cacheados(nombre, arg)

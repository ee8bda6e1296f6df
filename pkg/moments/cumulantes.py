from math import factorial, fsum

from gaussian.estados import adjacency, restrict_modes, zeta_conj
from matfunc.montrealer import (
    loop_montrealer_fast,
    loop_montrealer_ref,
    montrealer_fast,
    montrealer_ref,
)
from models.dominio import GaussianState, ModePattern
from models.errores import DomainError
from moments.combinatoria import set_partitions
from moments.momentos import as_real, photon_moment


def _momento_bloque(state, gamma, bloque, cache):
    modos = tuple(sorted(gamma[i] for i in bloque))
    if modos not in cache:
        cache[modos] = photon_moment(state, ModePattern.from_modes(modos, state.ell))
    return cache[modos]


def cumulant_via_partitions(state: GaussianState, gamma) -> float:
    """
    ⟨⟨Π_{i∈γ} n̂_i⟩⟩ = Σ_π (|π|-1)! (-1)^{|π|-1} Π_{B∈π} ⟨Π_{i∈B} n̂_i⟩.
    γ puede repetir modos.
    """
    gamma = list(gamma)
    cache = {}
    terminos = []
    for particion in set_partitions(gamma):
        producto = 1.0
        for bloque in particion.blocks:
            producto *= _momento_bloque(state, gamma, bloque, cache)
        r = len(particion)
        terminos.append(factorial(r - 1) * (-1) ** (r - 1) * producto)
    return fsum(terminos)


def cumulant_via_montrealer(state: GaussianState, modes, reference=False) -> float:
    """
    Cumulante de modos distintos como Montrealer con lazos de la
    adyacencia del estado reducido a esos modos.
    """
    modes = list(modes)
    if len(set(modes)) != len(modes):
        raise DomainError(
            "Modos repetidos: los cumulantes con repeticiones se calculan con cumulant_via_partitions"
        )
    if not modes:
        raise DomainError("Se necesita al menos un modo")
    reducido = restrict_modes(state, modes)
    a = adjacency(reducido)
    zc = zeta_conj(reducido)
    if not reducido.displaced:
        return as_real(montrealer_ref(a) if reference else montrealer_fast(a))
    if reference:
        return as_real(loop_montrealer_ref(a, zc))
    return as_real(loop_montrealer_fast(a, zc))


def moment_from_cumulants(state: GaussianState, gamma) -> float:
    """Inversión: ⟨Π n̂_i⟩ = Σ_π Π_{B∈π} ⟨⟨B⟩⟩"""
    gamma = list(gamma)
    cache = {}
    terminos = []
    for particion in set_partitions(gamma):
        producto = 1.0
        for bloque in particion.blocks:
            modos = tuple(sorted(gamma[i] for i in bloque))
            if modos not in cache:
                if len(set(modos)) == len(modos):
                    cache[modos] = cumulant_via_montrealer(state, modos)
                else:
                    cache[modos] = cumulant_via_partitions(state, modos)
            producto *= cache[modos]
        terminos.append(producto)
    return fsum(terminos)

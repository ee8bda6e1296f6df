from itertools import product
from math import comb

import numpy as np

from config import Config
from gaussian.estados import sigma, zeta_bar
from models.dominio import GaussianState
from models.errores import DomainError
from moments.momentos import as_pattern


def _t_vector(state, t):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.shape != (state.ell,):
        raise DomainError(f"t debe tener {state.ell} entradas")
    return t


def cgf(state: GaussianState, t) -> float:
    """
    K(t) = ½ ζ̄† (I - GΣ)^{-1} G ζ̄ - ½ log det(I - GΣ),
    G = diag(e^{t_i} - 1) duplicada, Σ = Σ^(s=1).
    """
    t = _t_vector(state, t)
    g = np.expm1(np.concatenate([t, t]))
    dim = 2 * state.ell
    matriz = np.eye(dim) - g[:, None] * sigma(state)
    # la región de convergencia es la que contiene t = 0, donde todos los
    # autovalores valen 1; ninguno puede haber cruzado el eje imaginario
    autovalores = np.linalg.eigvals(matriz)
    _, logdet = np.linalg.slogdet(matriz)
    if np.min(autovalores.real) <= 1e-12 or np.linalg.cond(matriz) > 1e12:
        raise DomainError("Función generatriz divergente: t demasiado grande para el estado")
    zeta = zeta_bar(state)
    cuadratica = np.vdot(zeta, np.linalg.solve(matriz, g * zeta))
    return float(0.5 * cuadratica.real - 0.5 * logdet)


def mgf(state: GaussianState, t) -> float:
    """M(t) = ⟨exp(n̂·t)⟩"""
    return float(np.exp(cgf(state, t)))


def _diferencia_mixta(f, p, h):
    """Producto tensorial de diferencias centrales δ^{p_i}/h^{p_i} en t = 0"""
    ejes = []
    for p_i in p:
        if p_i == 0:
            ejes.append([(0.0, 1.0)])
        else:
            ejes.append(
                [((p_i / 2 - k) * h, (-1) ** k * comb(p_i, k)) for k in range(p_i + 1)]
            )
    total = 0.0
    for puntos in product(*ejes):
        t = np.array([x for x, _ in puntos])
        peso = np.prod([w for _, w in puntos])
        total += peso * f(t)
    return total / h ** sum(p)


def _richardson(f, p, h):
    gruesa = _diferencia_mixta(f, p, h)
    fina = _diferencia_mixta(f, p, h / 2)
    return (4 * fina - gruesa) / 3


def moment_via_fd(state: GaussianState, pattern, h=Config.PASO_FD) -> float:
    """Momento por diferencias finitas mixtas de la mgf con un nivel de Richardson"""
    pattern = as_pattern(pattern, state.ell)
    return float(_richardson(lambda t: mgf(state, t), pattern.p, h))


def cumulant_via_fd(state: GaussianState, modes, h=Config.PASO_FD) -> float:
    """Cumulante ⟨⟨Π n̂_i⟩⟩ por diferencias finitas de la cgf"""
    p = [0] * state.ell
    for k in modes:
        p[k] += 1
    return float(_richardson(lambda t: cgf(state, t), p, h))

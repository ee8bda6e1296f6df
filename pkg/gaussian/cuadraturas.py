import numpy as np

from config import Config
from gaussian.estados import make_state, sigma, zeta_bar
from models.dominio import SOrder
from models.errores import DomainError


def r_matrix(ell: int) -> np.ndarray:
    """R = (1/√2) [[I, iI], [I, -iI]], con ζ̂ = R r̂ / √ħ"""
    uno = np.eye(ell)
    return np.block([[uno, 1j * uno], [uno, -1j * uno]]) / np.sqrt(2)


def to_quadrature(state, s=SOrder.SIMETRICO, hbar=Config.HBAR):
    """
    Covarianza y medias en cuadraturas (q_1..q_ℓ, p_1..p_ℓ):
    V^(s) = ħ R† Σ^(s) R y r̄ = √ħ R† ζ̄.
    """
    r = r_matrix(state.ell)
    v = hbar * r.conj().T @ sigma(state, s) @ r
    medias = np.sqrt(hbar) * r.conj().T @ zeta_bar(state)
    return np.real_if_close(v, tol=1000), np.real_if_close(medias, tol=1000)


def from_quadrature(v, s=SOrder.SIMETRICO, hbar=Config.HBAR, means=None):
    """Inverso de to_quadrature: recupera N, M y ᾱ y valida el estado"""
    s = SOrder.from_value(s)
    v = np.asarray(v, dtype=complex)
    dim = v.shape[0]
    if v.shape != (dim, dim) or dim % 2:
        raise DomainError("V debe ser cuadrada de dimensión par")
    ell = dim // 2
    r = r_matrix(ell)
    cov = r @ v @ r.conj().T / hbar - 0.5 * (1 - s.value) * np.eye(dim)
    n_mat = cov[ell:, ell:]
    m_mat = cov[:ell, ell:]
    alpha = None
    if means is not None:
        alpha = (r @ np.asarray(means, dtype=complex) / np.sqrt(hbar))[:ell]
    return make_state(n_mat, m_mat, alpha)

import numpy as np
from scipy.linalg import block_diag

from config import Config
from models.dominio import FamilySpec, GaussianState, SOrder
from models.errores import DomainError, ValidationError


def _escala(mat):
    return max(1.0, float(np.max(np.abs(mat)))) if mat.size else 1.0


def validate(state: GaussianState, tol=Config.TOL_INCERTIDUMBRE):
    """
    Verifica los invariantes físicos del estado y lanza ValidationError
    nombrando el primero que falla.
    """
    n, m = state.n_mat, state.m_mat
    if np.max(np.abs(n - n.conj().T), initial=0.0) > Config.TOL_HERMITICA * _escala(n):
        raise ValidationError("N no es hermítica")
    if np.max(np.abs(m - m.T), initial=0.0) > Config.TOL_HERMITICA * _escala(m):
        raise ValidationError("M no es simétrica")
    if np.min(np.linalg.eigvalsh(n)) < -Config.TOL_HERMITICA * _escala(n):
        raise ValidationError("N no es semidefinida positiva")

    diagonal = np.real(np.diag(n)).clip(min=0.0)
    cota = np.minimum(
        np.sqrt(np.outer(diagonal, 1 + diagonal)),
        np.sqrt(np.outer(1 + diagonal, diagonal)),
    )
    if np.any(np.abs(m) > cota + Config.TOL_COTA_M):
        raise ValidationError(
            "|M_ij| supera la cota min(√(N_ii(1+N_jj)), √(N_jj(1+N_ii)))"
        )

    ell = state.ell
    z = np.diag(np.concatenate([np.ones(ell), -np.ones(ell)]))
    incertidumbre = sigma(state, SOrder.NORMAL) + 0.5 * z + 0.5 * np.eye(2 * ell)
    incertidumbre = 0.5 * (incertidumbre + incertidumbre.conj().T)
    if np.min(np.linalg.eigvalsh(incertidumbre)) < -tol:
        raise ValidationError("Se viola la relación de incertidumbre Σ + Z/2 + I/2 ⪰ 0")
    return state


def make_state(n_mat, m_mat=None, alpha=None) -> GaussianState:
    """Construye y valida un estado gaussiano"""
    n_mat = np.atleast_2d(np.asarray(n_mat, dtype=complex))
    if m_mat is None:
        m_mat = np.zeros_like(n_mat)
    return validate(GaussianState(n_mat, m_mat, alpha))


def vacuum(ell: int) -> GaussianState:
    return make_state(np.zeros((ell, ell)))


def thermal_state(nbar) -> GaussianState:
    """Producto de estados térmicos con números medios nbar"""
    return make_state(np.diag(np.atleast_1d(np.asarray(nbar, dtype=float))))


def coherent_state(alpha) -> GaussianState:
    alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
    ell = alpha.shape[0]
    return make_state(np.zeros((ell, ell)), np.zeros((ell, ell)), alpha)


def sigma(state: GaussianState, s=SOrder.NORMAL) -> np.ndarray:
    """Σ^(s) = ((1-s)/2) I + [[Nᵀ, M], [M*, N]]"""
    s = SOrder.from_value(s)
    ell = state.ell
    bloque = np.block(
        [[state.n_mat.T, state.m_mat], [state.m_mat.conj(), state.n_mat]]
    )
    return bloque + 0.5 * (1 - s.value) * np.eye(2 * ell)


def adjacency(state: GaussianState, s=SOrder.NORMAL) -> np.ndarray:
    """A^(s) = X Σ^(s) = [[M*, N + c I], [Nᵀ + c I, M]] con c = (1-s)/2"""
    s = SOrder.from_value(s)
    c = 0.5 * (1 - s.value) * np.eye(state.ell)
    return np.block(
        [
            [state.m_mat.conj(), state.n_mat + c],
            [state.n_mat.T + c, state.m_mat],
        ]
    )


def zeta_bar(state: GaussianState) -> np.ndarray:
    """ζ̄ = (ᾱ, ᾱ*)"""
    return np.concatenate([state.alpha, state.alpha.conj()])


def zeta_conj(state: GaussianState) -> np.ndarray:
    """ζ̄* = (ᾱ*, ᾱ), pesos de los lazos en el hafniano con lazos"""
    return np.concatenate([state.alpha.conj(), state.alpha])


def eccentricity(kind: str, nbar: float, eta: float = 1.0) -> float:
    """m̄ de cada familia de un solo modo en función de n̄"""
    familia = FamilySpec(kind, nbar, eta)
    if familia.kind == "squeezed":
        return float(np.sqrt(nbar * (nbar + 1)))
    if familia.kind == "lossy_squeezed":
        return float(np.sqrt(nbar * (nbar + eta)))
    if familia.kind == "squashed":
        return float(nbar)
    return 0.0


def is_classical(kind: str, nbar: float, eta: float = 1.0) -> bool:
    """Un estado es no clásico si m̄ > n̄"""
    return eccentricity(kind, nbar, eta) <= nbar


def input_family(kind, nbar, k, ell, eta=1.0) -> GaussianState:
    """
    K modos iguales de la familia y ℓ-K vacíos:
    N = n̄ (1_K ⊕ 0), M = m̄ (1_K ⊕ 0).
    """
    if not 0 <= k <= ell:
        raise DomainError(f"K={k} fuera de [0, {ell}]")
    mbar = eccentricity(kind, nbar, eta)
    ocupados = np.concatenate([np.ones(k), np.zeros(ell - k)])
    return make_state(nbar * np.diag(ocupados), mbar * np.diag(ocupados))


def check_unitary(u, tol=Config.TOL_UNITARIA) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DomainError("El interferómetro debe ser una matriz cuadrada")
    if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > tol:
        raise DomainError("El interferómetro no es unitario")
    return u


def apply_interferometer(state: GaussianState, u) -> GaussianState:
    """N → U* N Uᵀ, M → U M Uᵀ, ᾱ → U ᾱ"""
    u = check_unitary(u)
    if u.shape[0] != state.ell:
        raise DomainError(f"El interferómetro tiene {u.shape[0]} modos y el estado {state.ell}")
    n_out = u.conj() @ state.n_mat @ u.T
    m_out = u @ state.m_mat @ u.T
    # simetrizar el redondeo de la conjugación
    n_out = 0.5 * (n_out + n_out.conj().T)
    m_out = 0.5 * (m_out + m_out.T)
    return make_state(n_out, m_out, u @ state.alpha)


def apply_uniform_loss(state: GaussianState, eta: float) -> GaussianState:
    """Pérdida uniforme: N → ηN, M → ηM, ᾱ → √η ᾱ"""
    if not 0 <= eta <= 1:
        raise DomainError(f"eta={eta} fuera de [0, 1]")
    return make_state(eta * state.n_mat, eta * state.m_mat, np.sqrt(eta) * state.alpha)


def restrict_modes(state: GaussianState, modes) -> GaussianState:
    """Estado reducido a los modos listados (filas/columnas de N, M y ᾱ)"""
    modes = list(modes)
    if any(not 0 <= k < state.ell for k in modes):
        raise DomainError(f"Modos {modes} fuera de rango para ℓ={state.ell}")
    idx = np.ix_(modes, modes)
    return GaussianState(state.n_mat[idx], state.m_mat[idx], state.alpha[modes])


def direct_sum(*states: GaussianState) -> GaussianState:
    """Estado producto de subsistemas independientes"""
    return make_state(
        block_diag(*[s.n_mat for s in states]),
        block_diag(*[s.m_mat for s in states]),
        np.concatenate([s.alpha for s in states]),
    )

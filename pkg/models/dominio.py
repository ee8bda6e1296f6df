import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import Config
from models.errores import DomainError, ResourceError


class SOrder(Enum):
    """Ordenamiento s de la función característica"""

    NORMAL = 1
    SIMETRICO = 0
    ANTINORMAL = -1

    @classmethod
    def from_value(cls, s):
        if isinstance(s, SOrder):
            return s
        for orden in cls:
            if s == orden.value:
                return orden
        raise DomainError(f"s={s} no es un ordenamiento soportado (1, 0, -1)")


def _congelar(arr, dtype=complex):
    copia = np.array(arr, dtype=dtype, copy=True)
    copia.setflags(write=False)
    return copia


class GaussianState:
    """
    Estado gaussiano de ℓ modos: matriz insensible a la fase N,
    matriz sensible a la fase M y desplazamiento ᾱ.

    Las comprobaciones físicas viven en gaussian.estados.make_state;
    este constructor solo verifica las formas.
    """

    def __init__(self, n_mat, m_mat, alpha=None):
        n_mat = np.atleast_2d(np.asarray(n_mat, dtype=complex))
        m_mat = np.atleast_2d(np.asarray(m_mat, dtype=complex))
        ell = n_mat.shape[0]
        if alpha is None:
            alpha = np.zeros(ell, dtype=complex)
        alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
        if n_mat.shape != (ell, ell) or m_mat.shape != (ell, ell):
            raise DomainError(
                f"Formas inconsistentes: N {n_mat.shape}, M {m_mat.shape}"
            )
        if alpha.shape != (ell,):
            raise DomainError(f"El desplazamiento debe tener {ell} entradas")
        self.n_mat = _congelar(n_mat)
        self.m_mat = _congelar(m_mat)
        self.alpha = _congelar(alpha)

    @property
    def ell(self) -> int:
        return self.n_mat.shape[0]

    @property
    def displaced(self) -> bool:
        return bool(np.any(self.alpha != 0))

    def __str__(self):
        return f"GaussianState(ℓ={self.ell}, tr N={np.trace(self.n_mat).real:.6g})"


@dataclass(frozen=True)
class ModePattern:
    """Repeticiones p_i de n̂_i en el producto ⟨n̂_1^{p_1} ... n̂_ℓ^{p_ℓ}⟩"""

    p: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        if any(x < 0 for x in self.p):
            raise DomainError("Las repeticiones deben ser no negativas")
        if not any(x > 0 for x in self.p):
            raise DomainError("El patrón necesita al menos una repetición positiva")
        if 2 * sum(self.p) > Config.MAX_REDUCCION:
            raise ResourceError(
                f"El patrón expande a {2 * sum(self.p)} índices "
                f"(límite {Config.MAX_REDUCCION})"
            )

    @classmethod
    def from_modes(cls, modes, ell):
        """Patrón a partir de una lista de modos, con repeticiones"""
        p = [0] * ell
        for k in modes:
            if not 0 <= k < ell:
                raise DomainError(f"Modo {k} fuera de rango para ℓ={ell}")
            p[k] += 1
        return cls(tuple(p))

    @property
    def order(self) -> int:
        return sum(self.p)


FAMILIAS = ("squeezed", "lossy_squeezed", "squashed", "thermal")


@dataclass(frozen=True)
class FamilySpec:
    """Familia de estados de entrada de un solo modo"""

    kind: str
    nbar: float = 1.0
    eta: float = 1.0

    def __post_init__(self):
        if self.kind not in FAMILIAS:
            raise DomainError(f"Familia desconocida: {self.kind}")
        if self.nbar < 0:
            raise DomainError("nbar debe ser no negativo")
        if not 0 < self.eta <= 1:
            raise DomainError(f"eta={self.eta} fuera de (0, 1]")

    @property
    def label(self) -> str:
        if self.kind == "lossy_squeezed":
            return f"lossy_squeezed(eta={self.eta!r})"
        return self.kind


@dataclass(frozen=True)
class McConfig:
    """Configuración de un barrido Monte Carlo sobre interferómetros de Haar"""

    ell: int
    k_values: Tuple[int, ...]
    family: FamilySpec
    orders: Tuple[int, ...] = (1, 2, 3, 4)
    trials: int = Config.MC_ENSAYOS
    seed: int = Config.MC_SEMILLA
    mode_rule: str = "first"

    def __post_init__(self):
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        object.__setattr__(self, "orders", tuple(int(r) for r in self.orders))
        if self.ell < 1:
            raise DomainError("ell debe ser positivo")
        if not self.k_values or any(not 0 <= k <= self.ell for k in self.k_values):
            raise DomainError(f"Cada K debe cumplir 0 ≤ K ≤ {self.ell}")
        if not self.orders or any(r not in (1, 2, 3, 4) for r in self.orders):
            raise DomainError("Los órdenes deben estar en {1, 2, 3, 4}")
        if max(self.orders) > self.ell:
            raise DomainError("Un orden no puede superar el número de modos")
        if self.trials < 1:
            raise DomainError("Se necesita al menos un ensayo")
        if self.mode_rule != "first":
            raise DomainError(f"Regla de modos no soportada: {self.mode_rule}")

    def as_dict(self) -> dict:
        return {
            "version": 1,
            "ell": self.ell,
            "k_values": list(self.k_values),
            "family": {
                "kind": self.family.kind,
                "nbar": self.family.nbar,
                "eta": self.family.eta,
            },
            "orders": list(self.orders),
            "trials": self.trials,
            "seed": self.seed,
            "mode_rule": self.mode_rule,
        }


@dataclass(frozen=True)
class StatEntry:
    mean: float
    std: float
    count: int


@dataclass
class CumulantStats:
    """Media y desviación estándar de los cumulantes por (K, orden)"""

    family: str
    ell: int
    seed: int
    trials: int
    entries: Dict[Tuple[int, int], StatEntry] = field(default_factory=dict)

    def get(self, k: int, order: int) -> StatEntry:
        return self.entries[(k, order)]

    def standard_error(self, k: int, order: int) -> float:
        e = self.entries[(k, order)]
        return e.std / np.sqrt(e.count)

    def rows(self) -> List[dict]:
        """Filas para el CSV, ordenadas por (K, orden)"""
        filas = []
        for (k, order) in sorted(self.entries):
            e = self.entries[(k, order)]
            filas.append(
                {
                    "family": self.family,
                    "ell": self.ell,
                    "K": k,
                    "order": order,
                    "mean": e.mean,
                    "std": e.std,
                    "trials": e.count,
                    "seed": self.seed,
                }
            )
        return filas


def config_digest(config: dict) -> str:
    """Hash estable de la configuración canonicalizada"""
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


@dataclass
class RunManifest:
    """Registro auditable de una ejecución de la línea de comandos"""

    command: str
    config_digest: str
    seed: Optional[int]
    version: str
    wall_clock: float
    outputs: List[str] = field(default_factory=list)

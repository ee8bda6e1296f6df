# ===========================================
# TDA: emparejamientos sobre 2ℓ vértices
# ===========================================

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from models.errores import DomainError


@dataclass(frozen=True)
class PairMatching:
    """
    Emparejamiento de vértices con lazos opcionales.

    Forma canónica: cada par (i, j) con i < j, pares ordenados
    lexicográficamente y lazos ordenados. Dos emparejamientos iguales
    se comparan por valor.
    """

    pairs: Tuple[Tuple[int, int], ...]
    loops: Tuple[int, ...] = ()

    @classmethod
    def canonical(cls, pairs: Iterable[Sequence[int]], loops: Iterable[int] = ()):
        """Construye la forma canónica a partir de pares en cualquier orden"""
        ordenados = []
        for i, j in pairs:
            if i == j:
                raise DomainError(f"El par ({i}, {j}) no une vértices distintos")
            ordenados.append((i, j) if i < j else (j, i))
        return cls(tuple(sorted(ordenados)), tuple(sorted(loops)))

    @property
    def size(self) -> int:
        return 2 * len(self.pairs) + len(self.loops)

    def is_perfect_cover(self, m: int) -> bool:
        """Cada vértice de [0, m) aparece exactamente una vez"""
        if self.size != m:
            return False
        vistos = [v for par in self.pairs for v in par] + list(self.loops)
        return sorted(vistos) == list(range(m))

    def partner(self, m: int) -> List[int]:
        """partner[v] es el vértice emparejado con v; un lazo apunta a sí mismo"""
        pareja = list(range(m))
        for i, j in self.pairs:
            pareja[i] = j
            pareja[j] = i
        return pareja

    def replace_edge_by_loops(self, edge: Tuple[int, int]) -> "PairMatching":
        """Rompe una arista en dos lazos"""
        restantes = [p for p in self.pairs if p != edge]
        return PairMatching.canonical(restantes, self.loops + edge)

    def to_one_based(self) -> str:
        """Notación del tipo (1,3)(2,4)(5)"""
        partes = [f"({i + 1},{j + 1})" for i, j in self.pairs]
        partes += [f"({v + 1})" for v in self.loops]
        return "".join(partes)

    def __str__(self):
        return self.to_one_based()


@dataclass(frozen=True)
class WalkBase:
    """Emparejamiento fijo Y = {(k, k+ℓ)} sobre el que se recorren caminos alternantes"""

    ell: int
    y_edges: Tuple[Tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        if self.ell < 1:
            raise DomainError("ell debe ser positivo")
        object.__setattr__(
            self, "y_edges", tuple((k, k + self.ell) for k in range(self.ell))
        )

    def y_partner(self, v: int) -> int:
        return v + self.ell if v < self.ell else v - self.ell


@dataclass(frozen=True)
class SetPartition:
    """Partición de las posiciones de un multiconjunto γ en bloques disjuntos"""

    blocks: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)

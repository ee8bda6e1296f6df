import xml.etree.ElementTree as ET

import numpy as np

from gaussian.estados import make_state
from models.dominio import FamilySpec, McConfig
from models.errores import DomainError

VERSION_SOPORTADA = "1"


class XMLParser:
    """Parser para archivos XML de estados gaussianos y de experimentos Monte Carlo"""

    def __init__(self, filepath):
        self.filepath = filepath

    def _raiz(self, etiqueta):
        try:
            root = ET.parse(self.filepath).getroot()
        except ET.ParseError as e:
            raise DomainError(f"XML mal formado en {self.filepath}: {e}") from e
        except OSError as e:
            raise DomainError(f"No se pudo leer {self.filepath}: {e}") from e
        if root.tag != etiqueta:
            raise DomainError(f"Se esperaba <{etiqueta}> y se encontró <{root.tag}>")
        version = root.get("version")
        if version != VERSION_SOPORTADA:
            raise DomainError(f"Versión de documento no soportada: {version}")
        return root

    def parse_state(self):
        """Lee <estadoGaussiano> y devuelve un GaussianState validado"""
        root = self._raiz("estadoGaussiano")
        ell = self._entero(root.get("modos"), "modos")

        n_mat = self._parsear_matriz(root.find("matrizN"), ell, "matrizN")
        nodo_m = root.find("matrizM")
        m_mat = np.zeros((ell, ell), dtype=complex)
        if nodo_m is not None:
            m_mat = self._parsear_matriz(nodo_m, ell, "matrizM")

        alpha = None
        nodo_alpha = root.find("desplazamiento")
        if nodo_alpha is not None:
            alpha = self._parsear_vector(nodo_alpha)
            if len(alpha) != ell:
                raise DomainError(f"<desplazamiento> tiene {len(alpha)} entradas, se esperaban {ell}")
        return make_state(n_mat, m_mat, alpha)

    def parse_experiment(self):
        """
        Lee <experimento> y devuelve (McConfig base, lista de FamilySpec).
        La familia del McConfig base es la primera de la lista.
        """
        root = self._raiz("experimento")
        ell = self._entero(self._texto(root, "modos"), "modos")
        k_values = self._parsear_lista(self._texto(root, "listaK"), "listaK")
        ordenes = (1, 2, 3, 4)
        if root.find("ordenes") is not None:
            ordenes = self._parsear_lista(self._texto(root, "ordenes"), "ordenes")
        ensayos = self._entero(self._texto(root, "ensayos"), "ensayos")
        semilla = self._entero(self._texto(root, "semilla"), "semilla")

        familias = []
        lista = root.find("listaFamilias")
        if lista is not None:
            for nodo in lista.findall("familia"):
                familias.append(self._parsear_familia(nodo))
        if not familias:
            raise DomainError("<listaFamilias> debe contener al menos una <familia>")

        base = McConfig(
            ell=ell,
            k_values=tuple(k_values),
            family=familias[0],
            orders=tuple(ordenes),
            trials=ensayos,
            seed=semilla,
        )
        return base, familias

    def _parsear_familia(self, nodo):
        try:
            return FamilySpec(
                kind=nodo.get("tipo"),
                nbar=float(nodo.get("nbar", "1.0")),
                eta=float(nodo.get("eta", "1.0")),
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, DomainError):
                raise
            raise DomainError(f"Familia mal formada: {ET.tostring(nodo, encoding='unicode')}") from e

    def _parsear_matriz(self, nodo, ell, nombre):
        if nodo is None:
            raise DomainError(f"Falta <{nombre}>")
        filas = [self._parsear_vector(fila) for fila in nodo.findall("fila")]
        if len(filas) != ell or any(len(f) != ell for f in filas):
            raise DomainError(f"<{nombre}> debe ser de {ell}×{ell}")
        return np.array(filas, dtype=complex)

    def _parsear_vector(self, nodo):
        """Una lista de <c re=".." im=".."/>"""
        valores = []
        for c in nodo.findall("c"):
            try:
                valores.append(complex(float(c.get("re", "0")), float(c.get("im", "0"))))
            except ValueError as e:
                raise DomainError(f"Número complejo inválido en <{nodo.tag}>") from e
        return valores

    def _parsear_lista(self, texto, nombre):
        """Convierte "2, 4, 8" en [2, 4, 8]"""
        items = [item.strip() for item in texto.split(",")]
        return [self._entero(item, nombre) for item in items if item]

    def _texto(self, root, etiqueta):
        nodo = root.find(etiqueta)
        if nodo is None or nodo.text is None:
            raise DomainError(f"Falta <{etiqueta}>")
        return nodo.text.strip()

    def _entero(self, texto, nombre):
        try:
            return int(texto)
        except (TypeError, ValueError) as e:
            raise DomainError(f"'{nombre}' debe ser entero, se leyó {texto!r}") from e

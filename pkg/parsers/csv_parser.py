import csv

from models.errores import DomainError

COLUMNAS_STATS = ("family", "ell", "K", "order", "mean", "std", "trials", "seed")
COLUMNAS_TIEMPOS = ("algorithm", "ell", "median_seconds", "reps")
COLUMNAS_VALORES = ("command", "method", "argument", "value")

_TIPOS = {
    "ell": int,
    "K": int,
    "order": int,
    "trials": int,
    "seed": int,
    "reps": int,
    "mean": float,
    "std": float,
    "median_seconds": float,
    "value": float,
}


class CSVParser:
    """Lee las tablas CSV que escribe SalidaWriter"""

    def __init__(self, filepath):
        self.filepath = filepath

    def parse(self, columnas=None):
        """Lista de diccionarios con los campos numéricos ya convertidos"""
        try:
            with open(self.filepath, newline="", encoding="utf-8") as f:
                lector = csv.DictReader(f)
                if columnas is not None and tuple(lector.fieldnames or ()) != tuple(columnas):
                    raise DomainError(
                        f"Columnas inesperadas en {self.filepath}: {lector.fieldnames}"
                    )
                return [self._convertir(fila) for fila in lector]
        except OSError as e:
            raise DomainError(f"No se pudo leer {self.filepath}: {e}") from e

    def parse_stats(self):
        return self.parse(COLUMNAS_STATS)

    def parse_timings(self):
        return self.parse(COLUMNAS_TIEMPOS)

    def parse_values(self):
        return self.parse(COLUMNAS_VALORES)

    def _convertir(self, fila):
        convertida = {}
        for clave, valor in fila.items():
            tipo = _TIPOS.get(clave)
            try:
                convertida[clave] = tipo(valor) if tipo else valor
            except ValueError as e:
                raise DomainError(f"Valor inválido en la columna {clave}: {valor!r}") from e
        return convertida

import csv
import os
import tempfile
import xml.etree.ElementTree as ET
from xml.dom import minidom

from models.dominio import GaussianState, RunManifest
from parsers.csv_parser import COLUMNAS_STATS, COLUMNAS_TIEMPOS, COLUMNAS_VALORES


def _complejo(padre, z):
    ET.SubElement(padre, "c", {"re": repr(float(z.real)), "im": repr(float(z.imag))})


def _formato(valor):
    # repr de float para que las reejecuciones sean idénticas byte a byte
    if isinstance(valor, float):
        return repr(valor)
    return str(valor)


def _escribir_atomico(outpath, contenido):
    carpeta = os.path.dirname(os.path.abspath(outpath))
    os.makedirs(carpeta, exist_ok=True)
    fd, temporal = tempfile.mkstemp(dir=carpeta, prefix=".tmp_", suffix=".xml")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(contenido)
        os.replace(temporal, outpath)
    except BaseException:
        if os.path.exists(temporal):
            os.remove(temporal)
        raise


class SalidaWriter:
    """Escritor de archivos de salida: estados XML, tablas CSV y manifiestos"""

    def write_state(self, state: GaussianState, outpath="estado.xml"):
        """Escribe un estado en el formato que lee XMLParser.parse_state"""
        root = ET.Element("estadoGaussiano", {"version": "1", "modos": str(state.ell)})
        for etiqueta, matriz in (("matrizN", state.n_mat), ("matrizM", state.m_mat)):
            nodo = ET.SubElement(root, etiqueta)
            for fila in matriz:
                nodo_fila = ET.SubElement(nodo, "fila")
                for z in fila:
                    _complejo(nodo_fila, z)
        desplazamiento = ET.SubElement(root, "desplazamiento")
        for z in state.alpha:
            _complejo(desplazamiento, z)

        xml_str = minidom.parseString(ET.tostring(root)).toprettyxml(indent="  ")
        with open(outpath, "w", encoding="utf-8") as f:
            f.write(xml_str)
        return outpath

    def _write_csv(self, filas, columnas, outpath):
        os.makedirs(os.path.dirname(os.path.abspath(outpath)), exist_ok=True)
        with open(outpath, "w", newline="", encoding="utf-8") as f:
            escritor = csv.writer(f, lineterminator="\n")
            escritor.writerow(columnas)
            for fila in filas:
                escritor.writerow([_formato(fila[c]) for c in columnas])
        return outpath

    def write_stats(self, tabla, outpath="cumulantes.csv"):
        """Una fila por (familia, K, orden); `tabla` es un CumulantStats o un dict de ellos"""
        if not isinstance(tabla, dict):
            tabla = {tabla.family: tabla}
        filas = []
        for stats in tabla.values():
            filas.extend(stats.rows())
        return self._write_csv(filas, COLUMNAS_STATS, outpath)

    def write_timings(self, filas, outpath="tiempos.csv"):
        return self._write_csv(filas, COLUMNAS_TIEMPOS, outpath)

    def write_values(self, filas, outpath="valores.csv"):
        return self._write_csv(filas, COLUMNAS_VALORES, outpath)

    def write_manifest(self, manifest: RunManifest, outpath="manifiesto.xml"):
        """Manifiesto XML escrito de forma atómica (temporal + os.replace)"""
        root = ET.Element("manifiesto", {"version": "1"})
        for etiqueta, valor in (
            ("comando", manifest.command),
            ("digest", manifest.config_digest),
            ("semilla", "" if manifest.seed is None else str(manifest.seed)),
            ("versionLibreria", manifest.version),
            ("segundos", repr(float(manifest.wall_clock))),
        ):
            ET.SubElement(root, etiqueta).text = valor
        salidas = ET.SubElement(root, "salidas")
        for ruta in manifest.outputs:
            ET.SubElement(salidas, "archivo").text = ruta

        xml_str = minidom.parseString(ET.tostring(root)).toprettyxml(indent="  ")
        _escribir_atomico(outpath, xml_str)
        return outpath

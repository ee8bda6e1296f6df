import os

import numpy as np
import pytest
from click.testing import CliRunner

from app import create_app
from config import Config
from gaussian.estados import apply_interferometer, input_family, make_state, thermal_state, vacuum
from generators.salida_writer import SalidaWriter
from matfunc.permanent import permanent
from models.dominio import GaussianState
from parsers.csv_parser import CSVParser
from parsers.xml_parser import XMLParser
from simulator.haar import haar_unitary

EXPERIMENTO = """<?xml version="1.0"?>
<experimento version="1">
  <modos>4</modos>
  <listaK>2,4</listaK>
  <ordenes>1,2,3</ordenes>
  <ensayos>20</ensayos>
  <semilla>9</semilla>
  <listaFamilias>
    <familia tipo="squeezed" nbar="1.0"/>
    <familia tipo="thermal" nbar="1.0"/>
  </listaFamilias>
</experimento>
"""

EXPERIMENTO_DESK = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "experimentos", "fig6_desk.xml"
)

N_TERMICO = np.array([[1.0, 0.3], [0.3, 0.5]])


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def app():
    return create_app()


def guardar(tmp_path, estado, nombre="estado.xml"):
    return SalidaWriter().write_state(estado, str(tmp_path / nombre))


def valores(resultado):
    """Líneas de resultado, sin las líneas de estado ✓/✗"""
    return [
        linea
        for linea in resultado.output.splitlines()
        if linea and not linea.startswith(("✓", "✗"))
    ]


def test_moment_of_vacuum(runner, app, tmp_path):
    ruta = guardar(tmp_path, vacuum(2))
    resultado = runner.invoke(app, ["moment", ruta, "--pattern", "1,2", "--out-dir", str(tmp_path)])
    assert resultado.exit_code == 0
    assert float(valores(resultado)[-1]) == 0.0


def test_moment_methods_agree_with_permanent(runner, app, tmp_path):
    ruta = guardar(tmp_path, make_state(N_TERMICO))
    esperado = permanent(N_TERMICO).real
    for metodo in ("hafnian", "fd"):
        resultado = runner.invoke(
            app, ["moment", ruta, "--pattern", "1,1", "--method", metodo, "--out-dir", str(tmp_path)]
        )
        assert resultado.exit_code == 0
        assert float(valores(resultado)[-1]) == pytest.approx(esperado, rel=1e-4)
    filas = CSVParser(str(tmp_path / "momento.csv")).parse_values()
    assert filas[0]["method"] == "fd"
    assert filas[0]["value"] == pytest.approx(esperado, rel=1e-4)


def test_cumulant_of_thermal_pair(runner, app, tmp_path):
    ruta = guardar(tmp_path, make_state(N_TERMICO))
    resultado = runner.invoke(app, ["cumulant", ruta, "--modes", "0,1", "--out-dir", str(tmp_path)])
    assert resultado.exit_code == 0
    assert float(valores(resultado)[-1]) == pytest.approx(0.09, rel=1e-12)


def test_cumulant_both_methods(runner, app, tmp_path, random_state):
    ruta = guardar(tmp_path, random_state(4, displaced=True))
    resultado = runner.invoke(app, ["cumulant", ruta, "--modes", "0,1,2,3", "--method", "both", "--out-dir", str(tmp_path)])
    assert resultado.exit_code == 0
    lineas = valores(resultado)
    assert lineas[0].startswith("montrealer ")
    assert lineas[1].startswith("partitions ")
    assert float(lineas[2].split()[1]) <= 1e-6


def test_odd_cumulant_of_diagonal_n_state(runner, app, tmp_path, rng):
    estado = apply_interferometer(input_family("squeezed", 1.0, 3, 3), haar_unitary(3, rng))
    ruta = guardar(tmp_path, estado)
    resultado = runner.invoke(app, ["cumulant", ruta, "--modes", "0,1,2", "--out-dir", str(tmp_path)])
    assert resultado.exit_code == 0
    assert abs(float(valores(resultado)[-1])) < 1e-10


def test_input_errors_exit_with_two(runner, app, tmp_path):
    resultado = runner.invoke(app, ["moment", str(tmp_path / "no.xml"), "--pattern", "1"])
    assert resultado.exit_code == 2

    malo = guardar(tmp_path, GaussianState([[1.0]], [[1.5]]), "malo.xml")
    resultado = runner.invoke(app, ["moment", malo, "--pattern", "1"])
    assert resultado.exit_code == 2
    assert "cota" in resultado.output

    ruta = guardar(tmp_path, thermal_state([1.0, 1.0]))
    resultado = runner.invoke(app, ["cumulant", ruta, "--modes", "0,0"])
    assert resultado.exit_code == 2


def test_resource_guard_exits_with_three(runner, app, tmp_path):
    ruta = guardar(tmp_path, thermal_state([1.0, 1.0]))
    resultado = runner.invoke(app, ["moment", ruta, "--pattern", "7,6"])
    assert resultado.exit_code == 3


def test_montecarlo_is_byte_identical_across_runs_and_threads(runner, app, tmp_path):
    config = tmp_path / "exp.xml"
    config.write_text(EXPERIMENTO, encoding="utf-8")
    salidas = []
    for nombre, hilos in (("a", "1"), ("b", "1"), ("c", "2")):
        out_dir = tmp_path / nombre
        resultado = runner.invoke(
            app, ["montecarlo", str(config), "--threads", hilos, "--out-dir", str(out_dir)]
        )
        assert resultado.exit_code == 0, resultado.output
        salidas.append((out_dir / "cumulantes.csv").read_bytes())
        assert (out_dir / "montecarlo_manifiesto.xml").exists()
    assert salidas[0] == salidas[1] == salidas[2]

    filas = CSVParser(str(tmp_path / "a" / "cumulantes.csv")).parse_stats()
    assert len(filas) == 2 * 2 * 3
    assert {f["family"] for f in filas} == {"squeezed", "thermal"}
    assert all(f["trials"] == 20 and f["seed"] == 9 for f in filas)


def test_montecarlo_seed_override(runner, app, tmp_path):
    config = tmp_path / "exp.xml"
    config.write_text(EXPERIMENTO, encoding="utf-8")
    resultado = runner.invoke(
        app, ["montecarlo", str(config), "--seed", "77", "--out-dir", str(tmp_path)]
    )
    assert resultado.exit_code == 0
    filas = CSVParser(str(tmp_path / "cumulantes.csv")).parse_stats()
    assert all(f["seed"] == 77 for f in filas)


def test_bench_writes_timings(runner, app, tmp_path):
    resultado = runner.invoke(
        app, ["bench", "--ell-min", "1", "--ell-max", "3", "--reps", "1", "--out-dir", str(tmp_path)]
    )
    assert resultado.exit_code == 0, resultado.output
    filas = CSVParser(str(tmp_path / "tiempos.csv")).parse_timings()
    algoritmos = {f["algorithm"] for f in filas}
    assert algoritmos == {"mtl_ref", "mtl_fast", "lhaf_ref", "lhaf_fast"}
    assert all(f["median_seconds"] >= 0 for f in filas)
    assert sorted({f["ell"] for f in filas}) == [1, 2, 3]


def test_draw_matchings(runner, app, tmp_path):
    resultado = runner.invoke(
        app, ["draw", "--ell", "2", "--set", "rspm", "--limit", "3", "--out-dir", str(tmp_path)]
    )
    assert resultado.exit_code == 0
    dibujos = [p for p in os.listdir(tmp_path) if p.endswith((".png", ".dot"))]
    assert len(dibujos) == 3


def test_moment_writes_to_default_folder(runner, app, tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "OUTPUT_FOLDER", str(tmp_path / "outputs"))
    ruta = guardar(tmp_path, thermal_state([0.5]))
    resultado = runner.invoke(app, ["moment", ruta, "--pattern", "2"])
    assert resultado.exit_code == 0
    filas = CSVParser(str(tmp_path / "outputs" / "momento.csv")).parse_values()
    assert filas[0]["command"] == "moment"
    assert filas[0]["value"] == pytest.approx(2 * 0.5**2 + 0.5)


def test_bench_beyond_loop_hafnian_guard(runner, app, tmp_path):
    resultado = runner.invoke(
        app, ["bench", "--ell-min", "13", "--ell-max", "13", "--reps", "1", "--out-dir", str(tmp_path)]
    )
    assert resultado.exit_code == 0, resultado.output
    filas = CSVParser(str(tmp_path / "tiempos.csv")).parse_timings()
    assert [(f["algorithm"], f["ell"]) for f in filas] == [("mtl_fast", 13)]
    assert (tmp_path / "bench_manifiesto.xml").exists()


def test_bench_rejects_ell_beyond_fast_montrealer(runner, app, tmp_path):
    resultado = runner.invoke(
        app, ["bench", "--ell-min", "1", "--ell-max", "19", "--out-dir", str(tmp_path)]
    )
    assert resultado.exit_code == 3
    assert not (tmp_path / "tiempos.csv").exists()


def test_shipped_experiment(runner, app, tmp_path):
    base, familias = XMLParser(EXPERIMENTO_DESK).parse_experiment()
    assert base.ell == 8
    assert base.k_values == (2, 4, 8)
    assert base.trials == 10_000
    assert base.seed == Config.MC_SEMILLA
    assert [f.label for f in familias] == ["thermal", "squashed", "lossy_squeezed(eta=0.5)", "squeezed"]

    resultado = runner.invoke(
        app, ["montecarlo", EXPERIMENTO_DESK, "--trials", "4", "--out-dir", str(tmp_path)]
    )
    assert resultado.exit_code == 0, resultado.output
    filas = CSVParser(str(tmp_path / "cumulantes.csv")).parse_stats()
    assert len(filas) == 4 * 3 * 4
    assert all(f["trials"] == 4 and f["seed"] == Config.MC_SEMILLA for f in filas)

import functools
import os
import sys
import time
import traceback
from dataclasses import replace

import click
import numpy as np

from config import Config
from generators.graphviz_gen import GraphvizGenerator
from generators.matchings import gen_pmp, gen_rpmp, gen_rspm, gen_spm
from generators.salida_writer import SalidaWriter
from matfunc.hafnian import loop_hafnian, loop_hafnian_fast
from matfunc.montrealer import montrealer_fast, montrealer_ref
from models.dominio import RunManifest, config_digest
from models.errores import DomainError, NumericalConsistencyError, ResourceError
from moments.cumulantes import cumulant_via_montrealer, cumulant_via_partitions
from moments.generadora import moment_via_fd
from moments.momentos import photon_moment
from parsers.xml_parser import XMLParser
from simulator.simulator import Simulator

EXIT_ENTRADA = 2
EXIT_RECURSO = 3
EXIT_VERIFICACION = 4

CONJUNTOS = {"pmp": gen_pmp, "spm": gen_spm, "rpmp": gen_rpmp, "rspm": gen_rspm}


def _ok(mensaje):
    click.echo(f"✓ {mensaje}", err=True)


def _falla(mensaje):
    click.echo(f"✗ {mensaje}", err=True)


def _con_codigos(f):
    """Traduce los errores de la librería al contrato de códigos de salida"""

    @functools.wraps(f)
    def envoltura(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except DomainError as e:
            _falla(f"Entrada inválida: {e}")
            sys.exit(EXIT_ENTRADA)
        except ResourceError as e:
            _falla(f"Límite de recursos: {e}")
            sys.exit(EXIT_RECURSO)
        except NumericalConsistencyError as e:
            _falla(f"Verificación numérica: {e}")
            sys.exit(EXIT_VERIFICACION)
        except (click.exceptions.Exit, click.ClickException):
            raise
        except Exception as e:
            _falla(f"Error inesperado: {e}")
            traceback.print_exc()
            sys.exit(1)

    return envoltura


def _lista_enteros(texto):
    try:
        return [int(x) for x in texto.split(",") if x.strip()]
    except ValueError as e:
        raise DomainError(f"Lista de enteros inválida: {texto!r}") from e


def _diferencia_relativa(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _cargar_estado(state_file):
    parser = XMLParser(state_file)
    state = parser.parse_state()
    _ok(f"Estado cargado: {state}")
    return state


def _manifiesto(writer, out_dir, comando, config, seed, inicio, salidas):
    manifest = RunManifest(
        command=comando,
        config_digest=config_digest(config),
        seed=seed,
        version=Config.VERSION,
        wall_clock=time.perf_counter() - inicio,
        outputs=salidas,
    )
    ruta = writer.write_manifest(manifest, os.path.join(out_dir, f"{comando}_manifiesto.xml"))
    _ok(f"Manifiesto: {ruta}")
    return ruta


def create_app():
    @click.group()
    @click.version_option(Config.VERSION)
    def app():
        """Momentos y cumulantes del número de fotones de estados gaussianos"""

    @app.command("moment")
    @click.argument("state_file", type=click.Path())
    @click.option("--pattern", required=True, help="Repeticiones p por modo, ej. 1,1,0")
    @click.option("--method", type=click.Choice(["hafnian", "fd"]), default="hafnian")
    @click.option("--out-dir", type=click.Path(), default=lambda: Config.OUTPUT_FOLDER)
    @_con_codigos
    def cmd_moment(state_file, pattern, method, out_dir):
        """Momento ⟨n̂_1^{p_1} ... n̂_ℓ^{p_ℓ}⟩ de un estado en XML"""
        state = _cargar_estado(state_file)
        p = _lista_enteros(pattern)
        if method == "hafnian":
            valor = photon_moment(state, p)
        else:
            valor = moment_via_fd(state, p)
        click.echo(f"{valor:.12g}")
        ruta = SalidaWriter().write_values(
            [{"command": "moment", "method": method, "argument": pattern, "value": valor}],
            os.path.join(out_dir, "momento.csv"),
        )
        _ok(f"CSV: {ruta}")

    @app.command("cumulant")
    @click.argument("state_file", type=click.Path())
    @click.option("--modes", required=True, help="Modos (desde 0), ej. 0,1,2")
    @click.option(
        "--method",
        type=click.Choice(["montrealer", "partitions", "both"]),
        default="montrealer",
    )
    @click.option("--out-dir", type=click.Path(), default=lambda: Config.OUTPUT_FOLDER)
    @_con_codigos
    def cmd_cumulant(state_file, modes, method, out_dir):
        """Cumulante ⟨⟨Π n̂_i⟩⟩ por Montrealer, por particiones o por ambos"""
        state = _cargar_estado(state_file)
        gamma = _lista_enteros(modes)
        filas = []
        if method in ("montrealer", "both"):
            valor_mtl = cumulant_via_montrealer(state, gamma)
            click.echo(f"montrealer {valor_mtl:.12g}" if method == "both" else f"{valor_mtl:.12g}")
            filas.append({"command": "cumulant", "method": "montrealer", "argument": modes, "value": valor_mtl})
        if method in ("partitions", "both"):
            valor_part = cumulant_via_partitions(state, gamma)
            click.echo(f"partitions {valor_part:.12g}" if method == "both" else f"{valor_part:.12g}")
            filas.append({"command": "cumulant", "method": "partitions", "argument": modes, "value": valor_part})
        ruta = SalidaWriter().write_values(filas, os.path.join(out_dir, "cumulante.csv"))
        _ok(f"CSV: {ruta}")
        if method == "both":
            diferencia = _diferencia_relativa(valor_mtl, valor_part)
            click.echo(f"relative_difference {diferencia:.3e}")
            if diferencia > Config.TOL_VERIFICACION:
                _falla(f"Los métodos difieren en {diferencia:.3e}")
                sys.exit(EXIT_VERIFICACION)
            _ok("Montrealer y particiones coinciden")

    @app.command("montecarlo")
    @click.argument("config_file", type=click.Path())
    @click.option("--seed", type=int, default=None, help="Reemplaza la semilla del archivo")
    @click.option("--trials", type=int, default=None, help="Reemplaza el número de ensayos del archivo")
    @click.option("--threads", type=int, default=1, show_default=True)
    @click.option("--out-dir", type=click.Path(), default=lambda: Config.OUTPUT_FOLDER)
    @_con_codigos
    def cmd_montecarlo(config_file, seed, trials, threads, out_dir):
        """Barrido Monte Carlo de cumulantes bajo interferómetros de Haar"""
        inicio = time.perf_counter()
        base, familias = XMLParser(config_file).parse_experiment()
        if seed is not None:
            base = replace(base, seed=seed)
        if trials is not None:
            base = replace(base, trials=trials)
        _ok(
            f"Experimento: ℓ={base.ell}, K={list(base.k_values)}, "
            f"{len(familias)} familias, {base.trials} ensayos, semilla {base.seed}"
        )

        tabla = Simulator(threads).family_sweep(base, familias)
        for etiqueta in tabla:
            _ok(f"Familia {etiqueta} completada")

        writer = SalidaWriter()
        ruta = writer.write_stats(tabla, os.path.join(out_dir, "cumulantes.csv"))
        _ok(f"CSV: {ruta}")
        config = base.as_dict()
        config["families"] = [
            {"kind": f.kind, "nbar": f.nbar, "eta": f.eta} for f in familias
        ]
        _manifiesto(writer, out_dir, "montecarlo", config, base.seed, inicio, [ruta])

    @app.command("bench")
    @click.option("--ell-min", type=int, default=1, show_default=True)
    @click.option("--ell-max", type=int, default=8, show_default=True)
    @click.option("--reps", type=int, default=3, show_default=True)
    @click.option("--seed", type=int, default=Config.MC_SEMILLA, show_default=True)
    @click.option("--out-dir", type=click.Path(), default=lambda: Config.OUTPUT_FOLDER)
    @_con_codigos
    def cmd_bench(ell_min, ell_max, reps, seed, out_dir):
        """Tiempos medianos de las versiones de referencia y rápidas"""
        if not 1 <= ell_min <= ell_max:
            raise DomainError("Se requiere 1 ≤ ell-min ≤ ell-max")
        if reps < 1:
            raise DomainError("reps debe ser positivo")
        if ell_max > Config.MAX_ELL_MTL_RAPIDO:
            raise ResourceError(f"ell-max={ell_max} supera el límite {Config.MAX_ELL_MTL_RAPIDO} de mtl_fast")
        inicio = time.perf_counter()
        rng = np.random.default_rng(seed)
        filas = []
        discrepancias = []
        for ell in range(ell_min, ell_max + 1):
            dim = 2 * ell
            a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            a = 0.5 * (a + a.T)
            algoritmos = {"mtl_fast": lambda: montrealer_fast(a)}
            if ell <= Config.MAX_ELL_MTL_REF:
                algoritmos["mtl_ref"] = lambda: montrealer_ref(a)
            if dim <= Config.MAX_LOOP_HAFNIAN:
                algoritmos["lhaf_ref"] = lambda: loop_hafnian(a)
            if dim <= Config.MAX_HAFNIAN_RAPIDO:
                algoritmos["lhaf_fast"] = lambda: loop_hafnian_fast(a)

            valores = {}
            for nombre, funcion in algoritmos.items():
                tiempos = []
                for _ in range(reps):
                    t0 = time.perf_counter()
                    valores[nombre] = funcion()
                    tiempos.append(time.perf_counter() - t0)
                filas.append(
                    {
                        "algorithm": nombre,
                        "ell": ell,
                        "median_seconds": float(np.median(tiempos)),
                        "reps": reps,
                    }
                )
            for ref, rapido in (("mtl_ref", "mtl_fast"), ("lhaf_ref", "lhaf_fast")):
                if ref in valores:
                    diferencia = _diferencia_relativa(valores[ref], valores[rapido])
                    if diferencia > Config.TOL_VERIFICACION:
                        discrepancias.append(f"{ref}/{rapido} ℓ={ell}: {diferencia:.3e}")
            _ok(f"ℓ={ell} medido")

        writer = SalidaWriter()
        ruta = writer.write_timings(filas, os.path.join(out_dir, "tiempos.csv"))
        _ok(f"CSV: {ruta}")
        config = {"ell_min": ell_min, "ell_max": ell_max, "reps": reps, "seed": seed}
        _manifiesto(writer, out_dir, "bench", config, seed, inicio, [ruta])
        if discrepancias:
            for d in discrepancias:
                _falla(f"Discrepancia {d}")
            sys.exit(EXIT_VERIFICACION)

    @app.command("draw")
    @click.option("--ell", type=int, required=True)
    @click.option("--set", "conjunto", type=click.Choice(sorted(CONJUNTOS)), default="rpmp")
    @click.option("--limit", type=int, default=12, show_default=True)
    @click.option("--out-dir", type=click.Path(), default=lambda: Config.OUTPUT_FOLDER)
    @_con_codigos
    def cmd_draw(ell, conjunto, limit, out_dir):
        """Dibuja los emparejamientos de un conjunto sobre el grafo de 2ℓ vértices"""
        if ell < 1:
            raise DomainError("ell debe ser positivo")
        argumento = ell if conjunto in ("rpmp", "rspm") else 2 * ell
        emparejamientos = CONJUNTOS[conjunto](argumento)
        _ok(f"{conjunto.upper()}: {len(emparejamientos)} emparejamientos")
        generador = GraphvizGenerator()
        for i, x in enumerate(emparejamientos[:limit]):
            ruta = generador.generate_matching_graph(
                x, ell, os.path.join(out_dir, f"{conjunto}_{ell}_{i}"), titulo=str(x)
            )
            _ok(f"Grafo: {ruta}")

    return app

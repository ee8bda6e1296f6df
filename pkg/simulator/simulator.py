from dataclasses import replace
from multiprocessing import Pool
from typing import Dict, Iterable

import numpy as np

from gaussian.estados import apply_interferometer, input_family
from models.dominio import CumulantStats, FamilySpec, McConfig, StatEntry
from moments.cumulantes import cumulant_via_montrealer
from simulator.haar import haar_unitary, trial_rng


class Welford:
    """Media y varianza en una pasada, vectorizada sobre las entradas"""

    def __init__(self, size):
        self.count = 0
        self.mean = np.zeros(size)
        self.m2 = np.zeros(size)

    def add(self, x):
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (x - self.mean)

    @property
    def std(self):
        if self.count < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.count - 1))


def _claves(config: McConfig):
    return [(k, r) for k in config.k_values for r in config.orders]


def _ensayo(args):
    """Cumulantes de los primeros r modos para cada (K, r) en un ensayo"""
    config, trial = args
    fam = config.family
    u = haar_unitary(config.ell, trial_rng(config.seed, trial))
    valores = []
    for k in config.k_values:
        entrada = input_family(fam.kind, fam.nbar, k, config.ell, fam.eta)
        salida = apply_interferometer(entrada, u)
        for r in config.orders:
            valores.append(cumulant_via_montrealer(salida, range(r)))
    return np.array(valores)


class Simulator:
    """Experimento Monte Carlo de cumulantes bajo interferómetros de Haar"""

    def __init__(self, threads: int = 1):
        self.threads = max(1, int(threads))

    def _resultados(self, config: McConfig):
        tareas = [(config, trial) for trial in range(config.trials)]
        if self.threads == 1:
            yield from map(_ensayo, tareas)
            return
        chunk = max(1, config.trials // (4 * self.threads))
        with Pool(processes=self.threads) as pool:
            # imap conserva el orden de los ensayos
            yield from pool.imap(_ensayo, tareas, chunksize=chunk)

    def run_mc(self, config: McConfig) -> CumulantStats:
        claves = _claves(config)
        acumulador = Welford(len(claves))
        for valores in self._resultados(config):
            acumulador.add(valores)

        stats = CumulantStats(
            family=config.family.label,
            ell=config.ell,
            seed=config.seed,
            trials=config.trials,
        )
        for i, clave in enumerate(claves):
            stats.entries[clave] = StatEntry(
                mean=float(acumulador.mean[i]),
                std=float(acumulador.std[i]),
                count=acumulador.count,
            )
        return stats

    def family_sweep(
        self, base_config: McConfig, families: Iterable[FamilySpec]
    ) -> Dict[str, CumulantStats]:
        """Misma semilla para todas las familias: números aleatorios comunes"""
        tabla = {}
        for fam in families:
            tabla[fam.label] = self.run_mc(replace(base_config, family=fam))
        return tabla


def run_mc(config: McConfig, threads: int = 1) -> CumulantStats:
    return Simulator(threads).run_mc(config)


def family_sweep(base_config: McConfig, families, threads: int = 1) -> Dict[str, CumulantStats]:
    return Simulator(threads).family_sweep(base_config, families)

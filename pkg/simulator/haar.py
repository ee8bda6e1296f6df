import hashlib

import numpy as np
from scipy.linalg import qr


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generador independiente para el ensayo `trial`, derivado de (seed, trial)"""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial)]))


def haar_unitary(ell: int, rng: np.random.Generator) -> np.ndarray:
    """
    Unitaria distribuida según la medida de Haar: matriz de Ginibre,
    factorización QR y corrección de las fases de la diagonal de R.
    """
    z = (rng.standard_normal((ell, ell)) + 1j * rng.standard_normal((ell, ell))) / np.sqrt(2)
    q, r = qr(z)
    d = np.diag(r)
    fases = d / np.abs(d)
    return q * fases


def unitary_stream_digest(seed: int, trials: int, ell: int) -> str:
    """Hash de la secuencia de unitarias que usan los ensayos 0..trials-1"""
    h = hashlib.sha256()
    for trial in range(trials):
        u = haar_unitary(ell, trial_rng(seed, trial))
        h.update(np.ascontiguousarray(u).tobytes())
    return h.hexdigest()

import os


class Config:
    VERSION = "1.0.0"
    OUTPUT_FOLDER = os.path.join(os.getcwd(), "outputs")

    # Tolerancias numéricas
    TOL_SIMETRIA = 1e-9
    TOL_HERMITICA = 1e-10
    TOL_INCERTIDUMBRE = 1e-9
    TOL_COTA_M = 1e-9
    TOL_UNITARIA = 1e-10
    TOL_IMAGINARIA = 1e-8
    TOL_VERIFICACION = 1e-6

    # Límites de generación (enumeraciones de fuerza bruta)
    MAX_PMP = 16
    MAX_SPM = 14
    MAX_ELL_RPMP = 9
    MAX_ELL_MTL_REF = 8
    MAX_ELL_LMTL_REF = 7
    MAX_ELL_MTL_RAPIDO = 18
    MAX_ELL_LMTL_RAPIDO = 16
    MAX_HAFNIAN = 16
    MAX_LOOP_HAFNIAN = 14
    MAX_HAFNIAN_RAPIDO = 24
    MAX_PERMANENT = 20
    MAX_HAM = 11
    MAX_REDUCCION = 24
    MAX_STIRLING = 20
    MAX_PARTICION = 10
    LOTE_SUBCONJUNTOS = 4096

    # Física
    HBAR = 2.0
    PASO_FD = 1e-2

    # Monte Carlo
    MC_ENSAYOS = 10_000
    MC_SEMILLA = 1

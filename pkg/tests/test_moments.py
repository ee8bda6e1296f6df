import numpy as np
import pytest

from gaussian.estados import (
    apply_interferometer,
    apply_uniform_loss,
    coherent_state,
    input_family,
    make_state,
    thermal_state,
    vacuum,
)
from matfunc.permanent import permanent
from models.dominio import ModePattern
from models.errores import DomainError, ResourceError
from moments.combinatoria import bell, set_partitions, stirling2
from moments.cumulantes import (
    cumulant_via_montrealer,
    cumulant_via_partitions,
    moment_from_cumulants,
)
from moments.generadora import cgf, cumulant_via_fd, mgf, moment_via_fd
from moments.momentos import photon_moment
from simulator.haar import haar_unitary


def cercanos(a, b, rel):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


# ===== combinatoria


@pytest.mark.parametrize(
    "m, n, esperado",
    [(1, 1, 1), (5, 1, 1), (5, 5, 1), (3, 2, 3), (4, 2, 7), (5, 3, 25), (6, 3, 90), (10, 5, 42525)],
)
def test_stirling2(m, n, esperado):
    assert stirling2(m, n) == esperado


def test_stirling2_range():
    with pytest.raises(DomainError):
        stirling2(3, 4)
    with pytest.raises(DomainError):
        stirling2(21, 2)
    with pytest.raises(DomainError):
        stirling2(3, 0)


@pytest.mark.parametrize("n, esperado", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_set_partitions_count_bell_numbers(n, esperado):
    particiones = set_partitions(n)
    assert len(particiones) == bell(n) == esperado
    for p in particiones:
        posiciones = sorted(i for bloque in p.blocks for i in bloque)
        assert posiciones == list(range(n))
    assert len(set(particiones)) == esperado


def test_set_partitions_limits():
    with pytest.raises(DomainError):
        set_partitions([])
    with pytest.raises(ResourceError):
        set_partitions(11)


def test_mode_pattern_validation():
    assert ModePattern.from_modes([0, 0, 2], 3).p == (2, 0, 1)
    with pytest.raises(DomainError):
        ModePattern((0, 0))
    with pytest.raises(DomainError):
        ModePattern((1, -1))
    with pytest.raises(ResourceError):
        ModePattern((7, 6))


# ===== momentos


def test_moments_of_vacuum_vanish():
    for p in [(1, 0), (2, 1), (1, 3)]:
        assert photon_moment(vacuum(2), p) == 0.0


def test_thermal_second_moment():
    nbar = 0.8
    assert photon_moment(thermal_state([nbar]), [1]) == pytest.approx(nbar)
    assert photon_moment(thermal_state([nbar]), [2]) == pytest.approx(2 * nbar**2 + nbar)


def test_squeezed_second_moment():
    nbar = 0.6
    estado = input_family("squeezed", nbar, 1, 1)
    assert photon_moment(estado, [2]) == pytest.approx(3 * nbar**2 + 2 * nbar)


def test_coherent_moments_are_poissonian():
    estado = coherent_state([0.3 + 1.1j])
    media = abs(0.3 + 1.1j) ** 2
    assert photon_moment(estado, [1]) == pytest.approx(media)
    assert photon_moment(estado, [2]) == pytest.approx(media**2 + media)
    assert photon_moment(estado, [3]) == pytest.approx(media**3 + 3 * media**2 + media)


@pytest.mark.parametrize("ell", range(1, 7))
def test_thermal_moment_is_permanent(rng, ell):
    for _ in range(3):
        g = rng.standard_normal((ell, ell)) + 1j * rng.standard_normal((ell, ell))
        n = 0.3 * g @ g.conj().T
        estado = make_state(n)
        valor = photon_moment(estado, (1,) * ell)
        assert cercanos(valor, permanent(n).real, 1e-9)


def test_moments_are_non_negative(random_state):
    for ell in (1, 2, 3):
        for _ in range(5):
            estado = random_state(ell, displaced=True)
            for p in [(1,) * ell, (2,) + (0,) * (ell - 1), (2,) + (1,) * (ell - 1)]:
                assert photon_moment(estado, p) >= -1e-8


def test_moment_pattern_must_match_modes():
    with pytest.raises(DomainError):
        photon_moment(vacuum(2), (1, 0, 0))


# ===== funciones generatrices


def test_generating_functions_at_origin(random_state):
    estado = random_state(3, displaced=True)
    assert mgf(estado, np.zeros(3)) == pytest.approx(1.0)
    assert cgf(estado, np.zeros(3)) == pytest.approx(0.0, abs=1e-15)


def test_coherent_mgf_is_poisson_product():
    alpha = np.array([0.5 + 0.2j, -0.7j])
    t = np.array([0.3, -0.4])
    esperado = np.prod(np.exp(np.abs(alpha) ** 2 * np.expm1(t)))
    assert mgf(coherent_state(alpha), t) == pytest.approx(esperado, rel=1e-12)


def test_thermal_mgf_is_geometric():
    nbar, t = 0.7, 0.2
    esperado = 1.0 / (1.0 - nbar * np.expm1(t))
    assert mgf(thermal_state([nbar]), [t]) == pytest.approx(esperado, rel=1e-12)


def test_divergent_generating_function():
    with pytest.raises(DomainError, match="divergente"):
        cgf(thermal_state([1.0]), [5.0])
    with pytest.raises(DomainError):
        cgf(thermal_state([1.0]), [0.1, 0.1])


def test_fd_second_moment_of_thermal():
    nbar = 0.8
    assert moment_via_fd(thermal_state([nbar]), [2]) == pytest.approx(2 * nbar**2 + nbar, rel=1e-5)


def test_fd_moment_of_vacuum_is_zero():
    assert moment_via_fd(vacuum(2), (1, 1)) == pytest.approx(0.0, abs=1e-12)


def test_fd_thermal_pair_is_permanent():
    n = np.array([[0.8, 0.3 + 0.1j], [0.3 - 0.1j, 0.5]])
    assert moment_via_fd(make_state(n), (1, 1)) == pytest.approx(permanent(n).real, rel=1e-4)


@pytest.mark.parametrize("p", [(1, 0, 0), (1, 1, 0), (2, 0, 1), (1, 1, 1), (2, 1, 1), (1, 2, 1)])
def test_fd_moments_match_hafnian_moments(random_state, p):
    for _ in range(3):
        estado = random_state(3, displaced=True)
        assert cercanos(moment_via_fd(estado, p), photon_moment(estado, p), 1e-4)


# ===== cumulantes


def test_first_cumulant(random_state):
    estado = random_state(3, displaced=True)
    esperado = estado.n_mat[1, 1].real + abs(estado.alpha[1]) ** 2
    assert cumulant_via_montrealer(estado, [1]) == pytest.approx(esperado, rel=1e-9)
    assert cumulant_via_partitions(estado, [1]) == pytest.approx(esperado, rel=1e-9)


def test_second_cumulant_without_displacement(random_state):
    for _ in range(20):
        estado = random_state(3)
        n, m = estado.n_mat, estado.m_mat
        esperado = abs(m[0, 2]) ** 2 + abs(n[0, 2]) ** 2
        assert cercanos(cumulant_via_montrealer(estado, [0, 2]), esperado, 1e-9)
        assert cercanos(cumulant_via_partitions(estado, [0, 2]), esperado, 1e-9)


def test_second_cumulant_with_displacement(random_state):
    for _ in range(20):
        estado = random_state(2, displaced=True)
        n, m, a = estado.n_mat, estado.m_mat, estado.alpha
        esperado = (
            abs(m[0, 1]) ** 2
            + abs(n[0, 1]) ** 2
            + 2 * (np.conj(a[0]) * np.conj(a[1]) * m[0, 1]).real
            + 2 * (a[0] * np.conj(a[1]) * n[0, 1]).real
        )
        assert cercanos(cumulant_via_montrealer(estado, [0, 1]), esperado, 1e-9)
        assert cercanos(cumulant_via_partitions(estado, [0, 1]), esperado, 1e-9)


def tercer_cumulante(n, m, a):
    c = np.conj
    terminos = [
        c(m[0, 2]) * m[0, 1] * n[1, 2],
        c(m[1, 2]) * m[0, 1] * n[0, 2],
        c(m[1, 2]) * m[0, 2] * n[0, 1],
        c(n[0, 2]) * n[0, 1] * n[1, 2],
        a[0] * a[1] * c(m[0, 2]) * n[1, 2],
        a[0] * a[1] * c(m[1, 2]) * n[0, 2],
        a[0] * a[2] * c(m[0, 1]) * c(n[1, 2]),
        a[0] * a[2] * c(m[1, 2]) * n[0, 1],
        a[0] * c(a[1]) * c(m[0, 2]) * m[1, 2],
        a[0] * c(a[1]) * c(n[1, 2]) * n[0, 2],
        a[0] * c(a[2]) * c(m[0, 1]) * m[1, 2],
        a[0] * c(a[2]) * n[0, 1] * n[1, 2],
        a[1] * a[2] * c(m[0, 1]) * c(n[0, 2]),
        a[1] * a[2] * c(m[0, 2]) * c(n[0, 1]),
        a[1] * c(a[2]) * c(m[0, 1]) * m[0, 2],
        a[1] * c(a[2]) * c(n[0, 1]) * n[0, 2],
    ]
    return 2 * sum(terminos).real


def cuarto_cumulante_sin_desplazamiento(n, m):
    c = np.conj
    terminos = [
        c(m[0, 2]) * c(m[1, 3]) * m[0, 1] * m[2, 3],
        c(m[0, 3]) * c(m[1, 2]) * m[0, 2] * m[1, 3],
        c(m[0, 3]) * c(m[1, 2]) * m[0, 1] * m[2, 3],
        c(m[0, 2]) * c(n[2, 3]) * m[0, 1] * n[1, 3],
        c(m[0, 3]) * c(n[1, 2]) * m[0, 2] * n[1, 3],
        c(m[0, 3]) * m[0, 1] * n[1, 2] * n[2, 3],
        c(m[1, 2]) * c(n[1, 3]) * m[0, 2] * n[0, 3],
        c(m[1, 2]) * c(n[1, 3]) * m[0, 3] * n[0, 2],
        c(m[1, 2]) * c(n[2, 3]) * m[0, 1] * n[0, 3],
        c(m[1, 2]) * c(n[2, 3]) * m[0, 3] * n[0, 1],
        c(m[1, 3]) * c(n[0, 2]) * m[1, 2] * n[0, 3],
        c(m[1, 3]) * c(n[1, 2]) * m[0, 2] * n[0, 3],
        c(m[1, 3]) * c(n[1, 2]) * m[0, 3] * n[0, 2],
        c(m[1, 3]) * m[0, 1] * n[0, 2] * n[2, 3],
        c(m[1, 3]) * m[0, 2] * n[0, 1] * n[2, 3],
        c(m[2, 3]) * c(n[0, 1]) * m[1, 2] * n[0, 3],
        c(m[2, 3]) * c(n[0, 1]) * m[1, 3] * n[0, 2],
        c(m[2, 3]) * m[0, 1] * n[0, 2] * n[1, 3],
        c(m[2, 3]) * m[0, 1] * n[0, 3] * n[1, 2],
        c(m[2, 3]) * m[0, 2] * n[0, 1] * n[1, 3],
        c(m[2, 3]) * m[0, 3] * n[0, 1] * n[1, 2],
        c(n[0, 2]) * c(n[2, 3]) * n[0, 1] * n[1, 3],
        c(n[0, 3]) * c(n[1, 2]) * n[0, 2] * n[1, 3],
        c(n[0, 3]) * n[0, 1] * n[1, 2] * n[2, 3],
    ]
    return 2 * sum(terminos).real


def test_third_cumulant_term_by_term(random_state):
    for _ in range(100):
        estado = random_state(3, displaced=True)
        esperado = tercer_cumulante(estado.n_mat, estado.m_mat, estado.alpha)
        assert cercanos(cumulant_via_montrealer(estado, [0, 1, 2]), esperado, 1e-9)


def test_fourth_cumulant_term_by_term(random_state):
    for _ in range(100):
        estado = random_state(4)
        esperado = cuarto_cumulante_sin_desplazamiento(estado.n_mat, estado.m_mat)
        assert cercanos(cumulant_via_montrealer(estado, [0, 1, 2, 3]), esperado, 1e-9)


def test_displacement_flag():
    assert not thermal_state([1.0, 0.5]).displaced
    assert coherent_state([0.0, 0.2j]).displaced


@pytest.mark.parametrize("ell", [2, 3, 4])
@pytest.mark.parametrize("displaced", [False, True])
def test_montrealer_and_partition_cumulants_agree(random_state, ell, displaced):
    for _ in range(10):
        estado = random_state(ell, displaced)
        modos = list(range(ell))
        assert cercanos(
            cumulant_via_montrealer(estado, modos),
            cumulant_via_partitions(estado, modos),
            1e-8,
        )


def test_reference_montrealer_path(random_state):
    for displaced in (False, True):
        estado = random_state(4, displaced)
        assert cercanos(
            cumulant_via_montrealer(estado, [0, 1, 3], reference=True),
            cumulant_via_montrealer(estado, [0, 1, 3]),
            1e-9,
        )


@pytest.mark.parametrize("modos", [[0, 1, 2], [0, 1, 2, 3]])
def test_cumulants_match_cgf_derivatives(random_state, modos):
    for _ in range(3):
        estado = random_state(4, displaced=True)
        assert cercanos(cumulant_via_montrealer(estado, modos), cumulant_via_fd(estado, modos), 1e-4)


def test_repeated_modes_go_through_partitions(random_state):
    estado = random_state(2)
    with pytest.raises(DomainError, match="cumulant_via_partitions"):
        cumulant_via_montrealer(estado, [0, 0])
    # varianza de n̂_0
    varianza = photon_moment(estado, (2, 0)) - photon_moment(estado, (1, 0)) ** 2
    assert cercanos(cumulant_via_partitions(estado, [0, 0]), varianza, 1e-9)


def test_odd_cumulants_vanish_for_diagonal_n(rng):
    for kind in ("squeezed", "squashed", "thermal"):
        entrada = input_family(kind, 1.0, 3, 3)
        salida = apply_interferometer(entrada, haar_unitary(3, rng))
        assert abs(cumulant_via_montrealer(salida, [0, 1, 2])) < 1e-10


def test_two_mode_cumulant_with_diagonal_n_ignores_occupations():
    m = np.array([[0.2, 0.3], [0.3, 0.1]])
    for n_diag in ([1.0, 1.0], [2.0, 0.5]):
        estado = make_state(np.diag(n_diag), m)
        assert cumulant_via_montrealer(estado, [0, 1]) == pytest.approx(0.09, rel=1e-12)


@pytest.mark.parametrize(
    "gamma", [[0], [0, 1], [0, 0], [0, 1, 2], [0, 0, 1], [0, 1, 2, 3], [1, 1, 2, 3]]
)
def test_moment_cumulant_inversion(random_state, gamma):
    estado = random_state(4, displaced=True)
    patron = ModePattern.from_modes(gamma, 4)
    assert cercanos(moment_from_cumulants(estado, gamma), photon_moment(estado, patron), 1e-8)


@pytest.mark.parametrize("modos", [[0], [0, 1], [0, 1, 2], [0, 1, 2, 3]])
def test_uniform_loss_scales_cumulants(random_state, modos):
    eta = 0.6
    for displaced in (False, True):
        estado = random_state(4, displaced)
        perdido = apply_uniform_loss(estado, eta)
        assert cercanos(
            cumulant_via_montrealer(perdido, modos),
            eta ** len(modos) * cumulant_via_montrealer(estado, modos),
            1e-8,
        )


def test_local_phases_keep_cumulants(random_state, rng):
    estado = random_state(4, displaced=True)
    u = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 4)))
    rotado = apply_interferometer(estado, u)
    for modos in ([0, 1], [0, 2, 3], [0, 1, 2, 3]):
        assert cercanos(
            cumulant_via_montrealer(rotado, modos), cumulant_via_montrealer(estado, modos), 1e-9
        )

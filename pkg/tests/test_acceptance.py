"""Structural properties of the three walk models, checked on seeded random
families and on the named constructions."""
import numpy as np
import pytest

from qswlab.models import DensityMatrix
from qswlab.services.constructors import (
    circulant_chord_graph,
    fig5_graph,
    fig6_graph,
    fig7_graph,
    oriented_path,
    star,
)
from qswlab.services.dynamics import evolve, evolve_many, limit_state, vertex_distribution
from qswlab.services.experiments import fig6_periodic_vector, observance, periodicity_demo, sample_accepted
from qswlab.services.generators import assemble_superoperator, build_generator, build_global, build_local
from qswlab.services.nonmoralizing import build_nonmoralizing, canonical_measurement
from qswlab.services.spectral import (
    circulant_eigenvector,
    contains_eigenvalue,
    null_space_basis,
    same_subspace,
    spectrum,
    spectrum_distance,
    undirected_pair_eigenvalue,
)
from qswlab.settings import get_settings
from qswlab.utils.enums import HamiltonianChoice, ModelMode, ParentRow, PeriodicityCase, SurveyFilter, Verdict

OMEGAS = [round(0.1 * i, 1) for i in range(1, 11)]


def seeded_family(count, survey_filter, directed=True, sizes=range(2, 9), p=0.5):
    sizes = list(sizes)
    for i in range(count):
        g, _ = sample_accepted(sizes[i % len(sizes)], p, directed, survey_filter, seed=1000 + i)
        yield g


def assert_state(rho: DensityMatrix):
    assert abs(rho.trace() - 1) < 1e-10
    assert rho.hermiticity_defect() < 1e-10
    assert rho.min_eigenvalue() > -1e-8


def test_strongly_connected_local_walks_relax_to_an_interior_state():
    for g in seeded_family(100, SurveyFilter.STRONGLY_CONNECTED):
        for omega in OMEGAS:
            report = spectrum(assemble_superoperator(build_local(g, omega)))
            assert report.verdict == Verdict.RELAXING, (g.name, omega)
            assert report.stationary_basis[0].min_eigenvalue() > 1e-10, (g.name, omega)


def test_one_sink_local_walks_relax():
    for i, g in enumerate(seeded_family(100, SurveyFilter.ONE_SINK, sizes=range(3, 9), p=0.3)):
        omega = OMEGAS[i % len(OMEGAS)]
        report = spectrum(assemble_superoperator(build_local(g, omega)), with_states=False)
        assert report.verdict == Verdict.RELAXING, (g.name, omega)


@pytest.mark.parametrize("omega", [0.1, 0.5, 1.0])
def test_star_keeps_several_stationary_states(omega):
    report = spectrum(assemble_superoperator(build_local(star(4), omega)), tol_zero=1e-8)
    assert report.null_dim >= 4


def test_undirected_global_walks_keep_the_coherent_stationary_states():
    graphs = seeded_family(50, SurveyFilter.WEAKLY_CONNECTED, directed=False, sizes=range(3, 9))
    for i, g in enumerate(graphs):
        omega = OMEGAS[i % len(OMEGAS)]
        gen = build_global(g, omega)
        F = assemble_superoperator(gen)
        report = spectrum(F, with_states=False)
        assert report.verdict == Verdict.CONVERGENT_NOT_RELAXING, (g.name, omega)
        assert report.null_dim >= g.n

        d = np.linalg.eigvalsh(gen.hamiltonian)
        analytic = [undirected_pair_eigenvalue(a, b, omega) for b in d for a in d]
        assert spectrum_distance(np.array(analytic), report.eigenvalues) < 1e-8

        coherent = assemble_superoperator(build_global(g, 0.0))
        assert same_subspace(null_space_basis(F), null_space_basis(coherent))


class TestCirculantChordGraph:
    omega = 0.5

    def setup_method(self):
        self.F = assemble_superoperator(build_global(circulant_chord_graph(2), self.omega))
        psi = circulant_eigenvector(8, 2) + circulant_eigenvector(8, 4)
        self.rho0 = DensityMatrix(0.5 * np.outer(psi, psi.conj()))

    def test_imaginary_eigenvalue(self):
        report = spectrum(self.F)
        assert contains_eigenvalue(report.eigenvalues, 2j * (1 - self.omega), 1e-8)
        assert report.verdict == Verdict.NON_CONVERGENT

    @pytest.mark.parametrize("t", [0.0, 1.0, 3.0])
    def test_proof_state_is_periodic(self, t):
        period = np.pi / (1 - self.omega)
        now, later = evolve_many(self.F, self.rho0, [t, t + period])
        assert np.linalg.norm(later.matrix - now.matrix) < 1e-8
        assert_state(now)
        assert_state(later)


@pytest.mark.parametrize("omega", [0.25, 0.5, 1.0])
def test_rotating_hamiltonian_breaks_convergence(omega):
    F = assemble_superoperator(build_generator(fig6_graph(), ModelMode.NONMORALIZING, omega))
    eigs = np.linalg.eigvals(F.matrix)
    assert contains_eigenvalue(eigs, 2j * np.sqrt(3) * omega, 1e-6)
    assert contains_eigenvalue(eigs, -2j * np.sqrt(3) * omega, 1e-6)

    report = periodicity_demo(PeriodicityCase.NONMORALIZING_FIG6, omega)
    assert report.max_deviation < 1e-6


def test_periodic_state_never_leaves_the_hub():
    omega = 0.5
    nm = build_nonmoralizing(fig6_graph(), omega)
    F = assemble_superoperator(nm.to_generator())
    rho0 = DensityMatrix.pure(fig6_periodic_vector(nm.space.total_dim, nm.space.vertex_dims[0]))
    period = np.pi / (np.sqrt(3) * omega)
    for rho in evolve_many(F, rho0, np.linspace(0, period, 7)):
        assert canonical_measurement(nm.space, rho)[0] == pytest.approx(1.0, abs=1e-8)
        assert_state(rho)


def test_parents_dark_superposition():
    minus = np.array([1, -1, 0]) / 2
    rho = np.outer(minus, minus) + 0.5 * np.diag([0, 0, 1])

    moral = build_global(fig5_graph(), 1.0, HamiltonianChoice.ZERO)
    F = assemble_superoperator(moral)
    assert np.linalg.norm(F.apply(rho)) < 1e-10
    assert vertex_distribution(moral, evolve(F, rho, 50.0)) == pytest.approx([0.25, 0.25, 0.5], abs=1e-10)

    # the enlarged model has no dark parent superposition: everything reaches the child
    gen = build_generator(fig5_graph(), ModelMode.NONMORALIZING, 1.0)
    embedded = np.zeros((4, 4))
    embedded[:3, :3] = rho
    out = evolve(assemble_superoperator(gen), embedded, 50.0)
    assert vertex_distribution(gen, out)[2] == pytest.approx(1.0, abs=1e-10)
    assert_state(out)


def test_observance_trend_on_an_oriented_path():
    g = oriented_path(10)
    rows = [observance(g, omega, 0) for omega in (0.7, 0.8, 0.9, 1.0)]
    p = [r.p_sink for r in rows]
    mu = [r.mu_sink for r in rows]
    assert all(b >= a - 1e-9 for a, b in zip(p, p[1:]))
    assert all(b <= a + 1e-9 for a, b in zip(mu, mu[1:]))
    assert p[-1] > 0.999
    assert mu[-1] < 1e-3


@pytest.mark.parametrize("omega", [0.7, 0.8, 0.9, 1.0])
def test_observance_trajectories_stay_states(omega):
    gen = build_generator(oriented_path(10), ModelMode.NONMORALIZING, omega)
    F = assemble_superoperator(gen)
    rho0 = DensityMatrix.basis(gen.dim, gen.vertex_subspaces[0].start)
    for rho in evolve_many(F, rho0, [0.0, 1.0, 10.0, 100.0]):
        assert_state(rho)
    rho_inf, _ = limit_state(F, rho0)
    assert_state(rho_inf)
    assert vertex_distribution(gen, rho_inf).sum() == pytest.approx(1.0, abs=1e-10)


PUBLISHED_FIG7_HUB = (0.666616, 0.11897)


def fig7_limits(row=None):
    g = fig7_graph()
    gen = build_generator(g, ModelMode.NONMORALIZING, 0.5, row=row)
    F = assemble_superoperator(gen)
    out = []
    for vertex in (5, 6):
        rho0 = DensityMatrix.basis(gen.dim, gen.vertex_subspaces[vertex].start)
        rho, _ = limit_state(F, rho0)
        assert_state(rho)
        out.append(vertex_distribution(gen, rho))
    return out


@pytest.mark.slow
def test_limiting_distribution_depends_on_the_start():
    from_v6, from_v7 = fig7_limits()
    assert 0.5 * np.abs(from_v6 - from_v7).sum() > 0.3


@pytest.mark.slow
def test_default_parent_row_is_the_closer_calibration():
    errors = {}
    for row in ParentRow:
        from_v6, from_v7 = fig7_limits(row)
        errors[row] = abs(from_v6[0] - PUBLISHED_FIG7_HUB[0]) + abs(from_v7[0] - PUBLISHED_FIG7_HUB[1])
    assert min(errors, key=errors.get) == get_settings().nonmoralizing_parent_row


@pytest.mark.slow
@pytest.mark.xfail(strict=False, reason="neither parent row reproduces the published hub probabilities")
def test_published_limiting_probabilities():
    from_v6, from_v7 = fig7_limits()
    assert from_v6[0] == pytest.approx(PUBLISHED_FIG7_HUB[0], abs=1e-2)
    assert from_v7[0] == pytest.approx(PUBLISHED_FIG7_HUB[1], abs=1e-2)

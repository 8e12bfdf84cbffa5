"""Named verification suites; each writes check records into a CheckCollector."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable

import numpy as np

from lib.boson import (
    GaussianState,
    PolynomialSection,
    bergman_transport_quadrature,
    bogoliubov_coherent,
    coherent_overlap,
    coherent_state,
    half_form_pairing_boson,
    nabla_b,
    prequant_operator,
    transport_gaussian,
    wick_transport,
)
from lib.boson.gaussian_states import (
    coherent_overlap_closed_form,
    holomorphic_vector,
    max_state_difference,
    n1_display_values,
)
from lib.boson.holonomy import triangle_holonomy
from lib.boson.polynomials import inverse_form
from lib.errors import CutLocusError
from lib.fermion import (
    FermionContext,
    corrected_transport,
    holonomy,
    kernel_transport,
    transport_bogoliubov,
    transport_coherent,
)
from lib.fermion.transport import (
    coherent_transport_bogoliubov,
    divergence_profile,
    first_order_check,
    transport_ode_operator,
    two_mode_display_path,
    two_mode_display_state,
)
from lib.geometry.half_forms import half_form_transport
from lib.geometry.phase_space import (
    ComplexStructure,
    Family,
    LinearPhaseSpace,
    check_compatibility,
    random_compatible,
)
from lib.geometry.symm_space import (
    GeodesicPath,
    ambient_eta,
    complex_direction,
    cut_locus_det,
    geodesic_between,
    geodesic_sample,
    kahler_eval,
)
from lib.grassmann import substitute_linear
from lib.grassmann.gaussians import gaussian_integral
from lib.harness.models import ScenarioConfig
from lib.harness.report import CheckCollector, CheckProvenance, VerificationReport
from lib.linalg import pfaffian, pfaffian_expansion
from lib.symmetry import (
    GroupAction,
    Parity,
    Representation,
    connection_commutator,
    fixed_tangent_dim,
    fixed_tangent_real_dim,
    flipped_structure,
    invariant_bilinear,
    isotypic_split,
    moment_map_boson,
    moment_map_fermion,
    normalize_conjugation,
    check_properness,
    real_structure_defects,
    s1_quotient_ring,
    torus_fixed_points,
)

logger = logging.getLogger(__name__)

Suite = Callable[[ScenarioConfig, CheckCollector], None]


def _random_unitary(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _random_skew(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim))
    return a - a.T


def _transport_tol(cfg: ScenarioConfig, b: float) -> float:
    return cfg.tolerances.transport if b < 1.4 else cfg.tolerances.transport_near_cut


def _quadrature_levels(cfg: ScenarioConfig) -> dict[str, int]:
    if cfg.quadrature_nodes is None:
        return {}
    return {"nodes": cfg.quadrature_nodes, "coarse_nodes": cfg.quadrature_nodes - 10}


def geometry_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tolerances
    families = [cfg.family] if cfg.family else [Family.SYMPLECTIC, Family.EUCLIDEAN]
    for fam in families:
        space = LinearPhaseSpace.standard(cfg.n, fam)
        base = space.base_j
        worst = 0.0
        all_passed = True
        structures = []
        for _ in range(cfg.samples):
            J = random_compatible(space, rng, scale=0.5)
            report = check_compatibility(J, space)
            all_passed &= report.passed
            worst = max(worst, report.square_residual, report.form_residual)
            structures.append(J)
        checks.flag(f"geometry.{fam}.compatible", "phase-space.compatibility", all_passed)
        checks.bound(f"geometry.{fam}.compatibility-residual", "phase-space.compatibility",
                     worst, tol.pfaffian)

        with checks.guard(f"geometry.{fam}.geodesic-endpoint", "symm-space.geodesic"):
            deviation = 0.0
            for J in structures:
                path = geodesic_between(base, J, space)
                deviation = max(deviation, float(np.abs(path.end.J - J.J).max()))
            checks.bound(f"geometry.{fam}.geodesic-endpoint", "symm-space.geodesic",
                         deviation, tol.transport)

        with checks.guard(f"geometry.{fam}.kahler-compatibility", "symm-space.kahler"):
            path = geodesic_between(base, structures[0], space)
            x = path.velocity(0.0)
            eta = kahler_eval(base, x, x, space).eta
            sigma = kahler_eval(base, x, complex_direction(base, x), space).sigma
            checks.compare(f"geometry.{fam}.kahler-compatibility", "symm-space.kahler",
                           sigma, eta, tol.closed_form * max(1.0, abs(eta)))
            checks.flag(f"geometry.{fam}.metric-positive", "symm-space.kahler", eta > 0)

    if cfg.n >= 2:
        space = LinearPhaseSpace.standard(cfg.n, Family.EUCLIDEAN)
        for b in cfg.geodesic.b:
            if b >= np.pi / 2:
                continue
            path = GeodesicPath(space, space.base_j, np.eye(cfg.n, dtype=complex), (b,))
            det_dev = 0.0
            scale_dev = 0.0
            for t in np.linspace(0.0, 1.0, 11):
                det = cut_locus_det(path.base, geodesic_sample(path, float(t)))
                det_dev = max(det_dev, abs(det - np.cos(b * t) ** 4))
                scale_dev = max(scale_dev, abs(det**-0.25 - 1.0 / np.cos(b * t)))
            checks.bound(f"geometry.cut-det-cos4.b={b:g}", "symm-space.cut-locus-det", det_dev,
                         tol.pfaffian, CheckProvenance.CLOSED_FORM)
            checks.bound(f"geometry.scaling-sec.b={b:g}", "symm-space.scaling-factor",
                         scale_dev, tol.scaling, CheckProvenance.CLOSED_FORM)


def grassmann_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tolerances
    worst = 0.0
    expansion = 0.0
    for k in range(cfg.samples):
        dim = 2 * (1 + k % 4)
        a = _random_skew(rng, dim)
        worst = max(worst, abs(gaussian_integral(a) - pfaffian(a)))
        expansion = max(expansion, abs(pfaffian_expansion(a) - pfaffian(a)))
    checks.bound("grassmann.gaussian-equals-pfaffian", "grassmann.gaussian-integral", worst,
                 tol.pfaffian)
    checks.bound("grassmann.pfaffian-expansion", "linalg.pfaffian", expansion, tol.pfaffian)
    value = 0.7
    checks.compare("grassmann.gaussian-2x2", "grassmann.gaussian-integral",
                   gaussian_integral(np.array([[0.0, value], [-value, 0.0]])), value,
                   tol.pfaffian, CheckProvenance.CLOSED_FORM)

    for n in range(1, min(cfg.n, 4) + 1):
        space = LinearPhaseSpace.standard(n, Family.EUCLIDEAN)
        varpi = space.base_j.varpi_matrix(space)
        checks.compare(f"grassmann.vacuum-normalisation.n={n}", "grassmann.gaussian-integral",
                       gaussian_integral(varpi, space.orientation_sign), 1.0, tol.pfaffian,
                       CheckProvenance.TRIVIAL)
        ctx = FermionContext.standard(n)
        checks.exact(f"fermion.kernel-dimension.n={n}", "fermion.holomorphic-dimension",
                     ctx.annihilator_rank(space.base_j), 2**n, CheckProvenance.CLOSED_FORM)

    ctx = FermionContext.standard(min(cfg.n, 4))
    space = ctx.space
    eye = np.eye(ctx.dim)
    nabla_res = 0.0
    clifford_res = 0.0
    hodge_res = 0.0
    for _ in range(cfg.samples):
        x, y = rng.standard_normal(space.dim), rng.standard_normal(space.dim)
        nx, ny = ctx.nabla(x), ctx.nabla(y)
        nabla_res = max(nabla_res, float(np.abs(nx @ ny + ny @ nx + (x @ y) * eye).max()))
        ax, ay = ctx.clifford(x), ctx.clifford(y)
        clifford_res = max(clifford_res, float(np.abs(ax @ ay + ay @ ax - (x @ y) * eye).max()))
        psi = rng.standard_normal(ctx.dim) + 1j * rng.standard_normal(ctx.dim)
        phi = rng.standard_normal(ctx.dim) + 1j * rng.standard_normal(ctx.dim)
        hodge_res = max(hodge_res, abs(ctx.inner_product_hodge(psi, phi) - ctx.inner(psi, phi)))
    checks.bound("fermion.nabla-anticommutator", "fermion.prequantum-relations", nabla_res,
                 tol.algebra)
    checks.bound("fermion.clifford-anticommutator", "fermion.prequantum-relations",
                 clifford_res, tol.algebra)
    checks.bound("fermion.hodge-form", "fermion.inner-product", hodge_res, tol.pfaffian)


def fermion_transport_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    n = max(cfg.n, 2)
    ctx = FermionContext.standard(n)
    space = ctx.space
    frame = _random_unitary(n, cfg.geodesic.k_seed)
    tol = cfg.tolerances
    for b in cfg.geodesic.b:
        label = f"n={n}.b={b:g}"
        path = GeodesicPath(space, space.base_j, frame, (b,))
        ttol = _transport_tol(cfg, b)
        with checks.guard(f"fermion.transport.{label}", "fermion.bogoliubov-transport"):
            bog = transport_bogoliubov(ctx, path)
            ode = transport_ode_operator(ctx, path, cfg.steps)
            checks.bound(f"fermion.ode-vs-bogoliubov.{label}", "fermion.bogoliubov-transport",
                         float(np.abs(bog.matrix - ode.matrix).max()), ttol)
            checks.bound(f"fermion.unitarity.{label}", "fermion.bogoliubov-transport",
                         bog.unitarity_residual(), tol.unitarity)
            ambient = bog.ambient(ctx)
            basis = ctx.hilbert_subspace(path.base).basis
            kernel_dev = 0.0
            for k in range(basis.shape[1]):
                image = kernel_transport(ctx, path, basis[:, k])
                kernel_dev = max(kernel_dev, float(np.abs(image - ambient @ basis[:, k]).max()))
            checks.bound(f"fermion.kernel-vs-bogoliubov.{label}", "fermion.kernel-transport",
                         kernel_dev, ttol)
        with checks.guard(f"fermion.coherent.{label}", "fermion.coherent-transport"):
            closed = transport_coherent(ctx, path)
            projected = coherent_transport_bogoliubov(ctx, path)
            checks.bound(f"fermion.coherent-closed-form.{label}", "fermion.coherent-transport",
                         closed.max_deviation(projected), ttol)
            checks.bound(f"fermion.first-order.{label}", "fermion.connection",
                         first_order_check(ctx, path), ttol)
    if n == 2:
        for b in (0.3, 1.0):
            with checks.guard(f"fermion.two-mode-display.b={b:g}", "fermion.coherent-display"):
                state = two_mode_display_state(ctx, b)
                moved = transport_coherent(ctx, two_mode_display_path(ctx, b))
                checks.bound(f"fermion.two-mode-display.b={b:g}", "fermion.coherent-display",
                             state.max_deviation(moved), tol.closed_form,
                             CheckProvenance.CLOSED_FORM)


def _triangles(
    space: LinearPhaseSpace, rng: np.random.Generator, count: int, scale: float
) -> list[tuple[ComplexStructure, ComplexStructure, ComplexStructure]]:
    out = []
    base = space.base_j
    attempts = 0
    while len(out) < count and attempts < 20 * count:
        attempts += 1
        b = random_compatible(space, rng, scale)
        c = random_compatible(space, rng, scale)
        if space.family is Family.EUCLIDEAN and min(
            cut_locus_det(base, b), cut_locus_det(b, c), cut_locus_det(c, base)
        ) < 0.2:
            continue
        out.append((base, b, c))
    return out


def fermion_flatness_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    ctx = FermionContext.standard(max(cfg.n, 2))
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tolerances
    for k, vertices in enumerate(_triangles(ctx.space, rng, cfg.samples, 0.4)):
        with checks.guard(f"fermion.holonomy.{k}", "fermion.projective-flatness"):
            report = holonomy(ctx, vertices)
            checks.bound(f"fermion.holonomy-scalar.{k}", "fermion.projective-flatness",
                         report.off_identity_residual, tol.flatness)
            checks.compare(f"fermion.holonomy-phase.{k}", "fermion.curvature",
                           np.exp(1j * report.phase), np.exp(1j * report.curvature_phase),
                           tol.curvature)
            checks.bound(f"fermion.corrected-holonomy.{k}", "fermion.metaplectic-flatness",
                         report.corrected_residual, tol.flatness)


def boson_transport_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    n = min(cfg.n, 2)
    space = LinearPhaseSpace.standard(n, Family.SYMPLECTIC)
    base = space.base_j
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tolerances

    section = PolynomialSection.holomorphic_monomial(space, base, [1] + [0] * (n - 1))
    curv_res = 0.0
    clifford_res = 0.0
    for _ in range(cfg.samples):
        x, y = rng.standard_normal(space.dim), rng.standard_normal(space.dim)
        xy = nabla_b(nabla_b(section, y), x)
        yx = nabla_b(nabla_b(section, x), y)
        expected = section.scale(-1j * (x @ space.form @ y))
        curv_res = max(curv_res, (xy.poly - yx.poly).max_abs_difference(expected.poly))
        ab = prequant_operator(prequant_operator(section, y), x)
        ba = prequant_operator(prequant_operator(section, x), y)
        expected = section.scale(1j * inverse_form(space, x, y))
        clifford_res = max(clifford_res, (ab.poly - ba.poly).max_abs_difference(expected.poly))
    checks.bound("boson.nabla-commutator", "boson.prequantum-relations", curv_res, tol.algebra)
    checks.bound("boson.operator-commutator", "boson.prequantum-relations", clifford_res,
                 tol.algebra)

    alpha = holomorphic_vector(space, base, rng.standard_normal(n) + 1j * rng.standard_normal(n))
    beta = holomorphic_vector(space, base, rng.standard_normal(n) + 1j * rng.standard_normal(n))
    checks.compare("boson.coherent-overlap", "boson.coherent-states",
                   coherent_overlap(space, base, alpha, beta),
                   coherent_overlap_closed_form(space, base, alpha, beta), tol.scaling,
                   CheckProvenance.CLOSED_FORM)

    frame = _random_unitary(n, cfg.geodesic.k_seed)
    points = rng.standard_normal((25, space.dim))
    for b in cfg.geodesic.b:
        label = f"n={n}.b={b:g}"
        path = GeodesicPath(space, base, frame, tuple([b] * n))
        with checks.guard(f"boson.transport.{label}", "boson.bogoliubov-transport"):
            closed = bogoliubov_coherent(path, alpha)
            general = transport_gaussian(coherent_state(space, base, alpha), path)
            checks.bound(f"boson.closed-vs-projection.{label}", "boson.bogoliubov-transport",
                         max_state_difference(closed, general, points), tol.transport)
            pairing = half_form_pairing_boson(path)
            checks.compare(f"boson.half-form-cancellation.{label}", "boson.metaplectic",
                           pairing.scaling_product, 1.0, tol.scaling)
            checks.info(f"boson.half-form-pairing.{label}", "boson.metaplectic",
                        pairing.pairing_value)
        if n == 1 and b <= 1.0:
            with checks.guard(f"boson.quadrature.{label}", "boson.bergman-kernel"):
                result = bergman_transport_quadrature(
                    path, coherent_state(space, base, alpha), points,
                    tolerance=tol.quadrature * 0.1, **_quadrature_levels(cfg),
                )
                closed = bogoliubov_coherent(path, alpha)
                checks.bound(f"boson.quadrature-vs-closed.{label}", "boson.bergman-kernel",
                             float(np.abs(result.values - closed(points)).max()), tol.quadrature)
                polynomial = bergman_transport_quadrature(
                    path, section, points, tolerance=tol.quadrature * 0.1,
                    **_quadrature_levels(cfg),
                )
                checks.bound(f"boson.wick-vs-quadrature.{label}", "boson.bergman-kernel",
                             float(np.abs(polynomial.values
                                          - wick_transport(section, path, points)).max()),
                             tol.quadrature)


def boson_flatness_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    space = LinearPhaseSpace.standard(1, Family.SYMPLECTIC)
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tolerances
    coefficients = np.array([[0.0], [0.4], [0.3j]])
    for k, vertices in enumerate(_triangles(space, rng, cfg.samples, 0.5)):
        with checks.guard(f"boson.holonomy.{k}", "boson.projective-flatness"):
            report = triangle_holonomy(vertices, space, coefficients)
            checks.bound(f"boson.holonomy-scalar.{k}", "boson.projective-flatness",
                         report.residual, tol.flatness)
            checks.compare(f"boson.holonomy-phase.{k}", "boson.curvature",
                           np.exp(1j * report.phase), np.exp(1j * report.curvature_phase),
                           tol.curvature)
            a, b, c = vertices
            product = 1.0
            for start, end in ((a, b), (b, c), (c, a)):
                leg = geodesic_between(start, end, space)
                product *= half_form_pairing_boson(leg).scaling_product
            checks.compare(f"boson.corrected-scaling.{k}", "boson.metaplectic-flatness",
                           product, 1.0, tol.scaling)


def _conjugation_cases(
    rng: np.random.Generator, epsilon: int, count: int
) -> list[tuple[Representation, np.ndarray, np.ndarray]]:
    cases = []
    for k in range(count):
        weight = 1 + k % 3
        rep = Representation(weights=(weight, -weight))
        h = np.diag(rng.uniform(0.5, 2.0, size=2)).astype(complex)
        swap = np.array([[0, 1], [1, 0]]) if epsilon == 1 else np.array([[0, -1], [1, 0]])
        seed = np.exp(1j * rng.uniform(0, 2 * np.pi)) * swap
        cases.append((rep, h, seed))
    return cases


def symmetry_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tolerances

    for epsilon in (1, -1):
        worst = 0.0
        for rep, h, seed in _conjugation_cases(rng, epsilon, 50):
            result = normalize_conjugation(rep, h, seed, epsilon)
            worst = max(worst, result.square_residual, result.invariance_residual,
                        result.hermitian_residual)
        checks.bound(f"symmetry.conjugation.eps={epsilon:+d}", "symmetry.invariant-conjugation",
                     worst, tol.conjugation)
    n = min(cfg.n, 3)
    trivial = Representation(matrices=(np.eye(n, dtype=complex),))
    phases = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, size=n)))
    real = normalize_conjugation(trivial, np.eye(n), phases, 1)
    checks.bound("symmetry.real-structure-omega", "symmetry.real-type",
                 real_structure_defects(real.operator, n)["omega"], tol.conjugation)
    quaternionic = normalize_conjugation(
        Representation(weights=(1, -1)), np.eye(2), np.array([[0, -1], [1, 0]]), -1
    )
    checks.bound("symmetry.quaternionic-structure-g", "symmetry.quaternionic-type",
                 real_structure_defects(quaternionic.operator, 2)["g"], tol.conjugation)

    checks.exact("symmetry.invariant-forms.(1,1)", "symmetry.invariant-forms",
                 invariant_bilinear(Representation(weights=(1, 1)), Parity.ANTISYMMETRIC).dim, 0)
    checks.exact("symmetry.invariant-forms.(1,-1)", "symmetry.invariant-forms",
                 invariant_bilinear(Representation(weights=(1, -1)), Parity.ANTISYMMETRIC).dim, 1)
    checks.exact("symmetry.invariant-forms.trivial", "symmetry.invariant-forms",
                 invariant_bilinear(trivial, Parity.SYMMETRIC).dim, n * (n + 1) // 2,
                 CheckProvenance.TRIVIAL)

    consistent = True
    for dim in (2, 3):
        space = LinearPhaseSpace.standard(dim, Family.EUCLIDEAN)
        for weights in itertools.product(range(-3, 4), repeat=dim):
            action = GroupAction.torus(space, weights)
            points = torus_fixed_points(action)
            oracle = all(
                fixed_tangent_real_dim(action, flipped_structure(space, s)) == 0
                for s in points.candidates
            )
            consistent &= oracle != points.continuum
            consistent &= 2 * fixed_tangent_dim(action, space.base_j) == fixed_tangent_real_dim(
                action, space.base_j
            )
    checks.flag("symmetry.discreteness-consistency", "symmetry.fixed-points", consistent)

    e2 = LinearPhaseSpace.standard(2, Family.EUCLIDEAN)
    e3 = LinearPhaseSpace.standard(3, Family.EUCLIDEAN)
    checks.exact("symmetry.fixed-count.(1,1)", "symmetry.fixed-points",
                 torus_fixed_points(GroupAction.torus(e2, (1, 1))).count or -1, 2)
    checks.exact("symmetry.fixed-count.(1,2,3)", "symmetry.fixed-points",
                 torus_fixed_points(GroupAction.torus(e3, (1, 2, 3))).count or -1, 4)
    opposite = GroupAction.torus(e2, (1, -1))
    checks.flag("symmetry.fixed-continuum.(1,-1)", "symmetry.fixed-points",
                torus_fixed_points(opposite).continuum)
    checks.exact("symmetry.commutant-oracle.(1,-1)", "symmetry.fixed-points",
                 fixed_tangent_real_dim(opposite, e2.base_j), 2)

    s2 = LinearPhaseSpace.standard(2, Family.SYMPLECTIC)
    verdict = check_properness(GroupAction.torus(s2, (1, -1)), seed=cfg.seed)
    checks.flag("symmetry.properness.(1,-1)", "symmetry.properness", verdict.obstructed)
    checks.bound("symmetry.properness-moment.(1,-1)", "symmetry.properness",
                 verdict.moment_residual, tol.moment)
    checks.flag("symmetry.properness.(1,1)", "symmetry.properness",
                not check_properness(GroupAction.torus(s2, (1, 1))).obstructed)
    s1 = LinearPhaseSpace.standard(1, Family.SYMPLECTIC)
    checks.flag("symmetry.properness.trivial", "symmetry.properness",
                check_properness(GroupAction.trivial(s1)).obstructed, CheckProvenance.TRIVIAL)

    ctx = FermionContext.standard(2)
    split = isotypic_split(ctx, GroupAction.torus(e2, (1, 1)), e2.base_j)
    checks.flag("symmetry.isotypic-weights.(1,1)", "symmetry.isotypic",
                split.weight_multiset() == [0, 1, 1, 2])
    checks.bound("symmetry.isotypic-invariance.(1,1)", "symmetry.isotypic",
                 split.invariance_residual, tol.scaling)
    single = isotypic_split(ctx, GroupAction.trivial(e2), e2.base_j)
    checks.exact("symmetry.isotypic-trivial", "symmetry.isotypic", len(single.blocks), 1,
                 CheckProvenance.TRIVIAL)
    checks.bound("symmetry.connection-commutes.(1,-1)", "symmetry.isotypic",
                 connection_commutator(ctx, opposite, e2.base_j), tol.scaling)
    ring = s1_quotient_ring(2, [1.0, -1.0])
    opposite_split = isotypic_split(ctx, opposite, e2.base_j)
    checks.info("symmetry.invariant-block-dim.(1,-1)", "symmetry.isotypic",
                opposite_split.dims.get(0, 0), ring.dimension)

    for action in (GroupAction.torus(e2, (1, 2)), GroupAction.torus(e3, (1, -1, 2))):
        mu = moment_map_fermion(action)
        mu_b = moment_map_boson(GroupAction.torus(
            LinearPhaseSpace.standard(action.space.n, Family.SYMPLECTIC), action.weights))
        pts = rng.standard_normal((8, action.space.dim))
        fermion_dev = 0.0
        boson_dev = 0.0
        for angle in (0.4, 1.3, 2.9):
            k = action.element(angle)
            fermion_dev = max(fermion_dev, substitute_linear(mu, k.T).max_deviation(mu))
            boson_dev = max(boson_dev, float(np.abs(mu_b(pts @ k.T) - mu_b(pts)).max()))
        checks.bound(f"symmetry.moment-equivariance.{action.weights}", "symmetry.moment-map",
                     max(fermion_dev, boson_dev), tol.moment)

    for size in (1, 2, 3):
        ring = s1_quotient_ring(size, [1.0])
        checks.exact(f"symmetry.quotient-ring.r=1.n={size}", "symmetry.quotient-ring",
                     ring.dimension, 2 ** (2 * size - 2), CheckProvenance.CLOSED_FORM)
        free = [m for m in ring.invariant_masks if not m & 0b11]
        checks.exact(f"symmetry.quotient-generators.r=1.n={size}", "symmetry.quotient-ring",
                     ring.rank_modulo_ideal(free), 2 ** (2 * size - 2))
    checks.exact("symmetry.quotient-ring.r=2.n=2", "symmetry.quotient-ring",
                 s1_quotient_ring(2, [1.0, 1.0]).dimension, 4, CheckProvenance.REGRESSION)


def cut_locus_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    n = max(cfg.n, 2)
    space = LinearPhaseSpace.standard(n, Family.EUCLIDEAN)
    ctx = FermionContext.standard(n)
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tolerances
    agree = True
    for _ in range(cfg.samples):
        J = random_compatible(space, rng, scale=1.5)
        det = cut_locus_det(space.base_j, J)
        try:
            geodesic_between(space.base_j, J, space)
            solvable = True
        except CutLocusError:
            solvable = False
        agree &= solvable == (det > 0)
    checks.flag("cut-locus.dichotomy", "symm-space.cut-locus", agree)

    for b in cfg.geodesic.b:
        if b >= np.pi / 2:
            continue
        path = GeodesicPath(space, space.base_j, np.eye(n, dtype=complex), (b,))
        with checks.guard(f"cut-locus.pairing.b={b:g}", "symm-space.half-forms"):
            half = half_form_transport(path)
            checks.compare(f"cut-locus.pairing.b={b:g}", "symm-space.half-forms",
                           half.pairing.value, np.cos(b), tol.scaling,
                           CheckProvenance.CLOSED_FORM)
            corrected = corrected_transport(ctx, path)
            checks.compare(f"cut-locus.corrected-scaling.b={b:g}", "fermion.metaplectic",
                           corrected.scaling_product, 1.0, tol.scaling)

    for sample in divergence_profile(ctx, [1.2, 1.5, 1.57, np.pi / 2]):
        checks.info(f"cut-locus.divergence-scale.b={sample.b:.6g}", "fermion.cut-locus",
                    sample.scale, None)
        checks.info(f"cut-locus.projection-norm.b={sample.b:.6g}", "fermion.cut-locus",
                    sample.projection_norm, None)


def discrepancies_suite(cfg: ScenarioConfig, checks: CheckCollector) -> None:
    tol = cfg.tolerances
    space = LinearPhaseSpace.standard(1, Family.SYMPLECTIC)
    base = space.base_j
    rng = np.random.default_rng(cfg.seed)
    points = rng.standard_normal((25, 2))
    a = 0.4 - 0.2j
    alpha = a * np.array([1.0, -1.0j])
    for b in (1e-3, 0.5):
        path = GeodesicPath(space, base, np.eye(1, dtype=complex), (b,))
        closed = bogoliubov_coherent(path, alpha)
        checks.info(f"paper-discrepancies.boson-n1-display.b={b:g}", "boson.coherent-display",
                    float(np.abs(n1_display_values(b, a, points) - closed(points)).max()), 0.0)
    start = GaussianState.vacuum(space, base)
    checks.info("paper-discrepancies.boson-n1-display-limit", "boson.coherent-display",
                float(np.abs(n1_display_values(0.0, 0.0, points) - start(points)).max()), 0.0)

    e2 = LinearPhaseSpace.standard(2, Family.EUCLIDEAN)
    opposite = torus_fixed_points(GroupAction.torus(e2, (1, -1)))
    checks.info("paper-discrepancies.weights-(1,-1)-fixed-count", "symmetry.fixed-points",
                opposite.count, 2)
    same = torus_fixed_points(GroupAction.torus(e2, (1, 1)))
    checks.info("paper-discrepancies.weights-(1,1)-fixed-count", "symmetry.fixed-points",
                same.count, 2)

    path = GeodesicPath(space, base, np.eye(1, dtype=complex), (0.5,))
    x = path.velocity(0.0)
    checks.info("paper-discrepancies.disk-metric-constant", "symm-space.kahler",
                ambient_eta(base, x, x) / kahler_eval(base, x, x, space).eta, 1.0)

    ctx = FermionContext.standard(2)
    for b in (0.3, 1.0):
        check_id = f"paper-discrepancies.fermion-two-mode-display.b={b:g}"
        with checks.guard(check_id, "fermion.coherent-display"):
            moved = transport_coherent(ctx, two_mode_display_path(ctx, b))
            checks.bound(check_id, "fermion.coherent-display",
                         two_mode_display_state(ctx, b).max_deviation(moved), tol.closed_form,
                         CheckProvenance.CLOSED_FORM)


SUITES: dict[str, Suite] = {
    "geometry": geometry_suite,
    "grassmann": grassmann_suite,
    "fermion-transport": fermion_transport_suite,
    "fermion-flatness": fermion_flatness_suite,
    "boson-transport": boson_transport_suite,
    "boson-flatness": boson_flatness_suite,
    "symmetry": symmetry_suite,
    "cut-locus": cut_locus_suite,
    "paper-discrepancies": discrepancies_suite,
}


def run_suite(cfg: ScenarioConfig, tol_scale: float = 1.0) -> VerificationReport:
    """Run one named suite; module errors become failed checks."""
    checks = CheckCollector(cfg.suite, cfg.seed, tol_scale)
    logger.info("running suite %s (n=%d, seed=%d)", cfg.suite, cfg.n, cfg.seed)
    with checks.timed(cfg.suite), checks.guard(f"{cfg.suite}.suite", "plumbing"):
        SUITES[cfg.suite](cfg, checks)
    report = checks.report
    logger.info("suite %s: %d checks, passed=%s", cfg.suite, len(report.checks), report.passed)
    return report

import numpy as np
import pytest

from twostokes import qmat, region, states
from twostokes.errors import PreconditionError, SpecError
from twostokes.region import RegionDataset, RegionPoint, hull_margin, locate, random_cloud, segment_sweep, werner_sweep
from twostokes.states import H, V, JonesVector, RandomSpec


def test_vertices_are_reproduced():
    pts = region.polygon_vertices()
    assert [p.tag for p in pts] == list("ABCDE")
    for p in pts:
        assert (p.x, p.y) == pytest.approx(region.VERTEX_COORDS[p.tag], abs=1e-10)


def test_vertex_purities():
    purity = {p.tag: p.purity for p in region.polygon_vertices()}
    assert purity == pytest.approx({"A": 1, "B": 1, "C": 0.5, "D": 0.25, "E": 0.5})


def test_hull_margin_signs():
    assert hull_margin(0.1, 0.1) > 0
    assert hull_margin(-0.6, 0.1) < 0
    assert hull_margin(0.6, 0.6) < 0
    for x, y in region.VERTEX_COORDS.values():
        assert abs(hull_margin(x, y)) < 1e-15
    xs = np.array([0.1, -0.6])
    assert (hull_margin(xs, np.array([0.1, 0.1])) > 0).tolist() == [True, False]


def test_werner_sweep_endpoints_and_line():
    ds = werner_sweep(states.bell("phi_plus"), 21)
    xy = ds.xy()
    assert ds.family == "werner" and len(xy) == 21
    np.testing.assert_allclose(xy[0], [1, 0], atol=1e-10)
    np.testing.assert_allclose(xy[-1], [-0.5, 0], atol=1e-10)
    np.testing.assert_allclose(xy[:, 1], 0, atol=1e-9)
    assert [p.param for p in ds.points][:2] == [1.0, 0.95]


def test_werner_half_point():
    # oracle: p12_sq_signed = (3 lambda^2 - 1) / 2 for a Bell-based Werner state
    ds = werner_sweep(states.bell("phi_plus"), 21)
    mid = ds.points[10]
    assert mid.param == 0.5
    assert (mid.x, mid.y) == pytest.approx(((3 * 0.25 - 1) / 2, 0.0), abs=1e-10)
    assert (mid.x, mid.y) == pytest.approx((-0.125, 0.0), abs=1e-10)


def test_werner_sweep_of_product_runs_from_a_to_d():
    ds = werner_sweep(states.product_pure(H, H), 11)
    xy = ds.xy()
    np.testing.assert_allclose(xy[0], [0, 1], atol=1e-10)
    np.testing.assert_allclose(xy[-1], [-0.5, 0], atol=1e-10)


def test_werner_sweep_general_pure_state_is_collinear_and_monotone():
    psi = states.random_state(RandomSpec("haar-pure", seed=11))
    ds = werner_sweep(psi, 21)
    xy = ds.xy()
    d = xy[0] - xy[-1]
    cross = d[0] * (xy[:, 1] - xy[-1, 1]) - d[1] * (xy[:, 0] - xy[-1, 0])
    np.testing.assert_allclose(cross, 0, atol=1e-9)
    purities = [p.purity for p in ds.points]
    assert all(a > b for a, b in zip(purities, purities[1:]))


def test_werner_sweep_errors():
    with pytest.raises(PreconditionError):
        werner_sweep(qmat.I4 / 4, 5)
    with pytest.raises(SpecError):
        werner_sweep(states.bell("phi_plus"), 1)
    with pytest.raises(SpecError):
        werner_sweep(states.bell("phi_plus"), 2.5)


@pytest.mark.parametrize(
    "kind, end, middle",
    [("AE", "A", "E"), ("DE", "E", "D"), ("AC_classical", "A", "C")],
)
def test_segment_endpoints_and_midpoint(kind, end, middle):
    # both parameter ends give the same vertex; the equal mixture gives the other
    ds = segment_sweep(kind, 11)
    xy = ds.xy()
    np.testing.assert_allclose(xy[0], region.VERTEX_COORDS[end], atol=1e-10)
    np.testing.assert_allclose(xy[-1], region.VERTEX_COORDS[end], atol=1e-10)
    np.testing.assert_allclose(xy[5], region.VERTEX_COORDS[middle], atol=1e-10)
    assert ds.points[5].param == 0.5
    assert ds.family == kind


def test_segment_interior_points():
    # DE: mu |H><H| (x) I/2 + (1 - mu) |V><V| (x) I/2 has only S10 = 2 mu - 1,
    # so x = -1/2 and y = (2 mu - 1)^2 / 2
    mu = np.linspace(0, 1, 5)
    xy = segment_sweep("DE", 5).xy()
    np.testing.assert_allclose(xy[:, 0], -0.5, atol=1e-12)
    np.testing.assert_allclose(xy[:, 1], (2 * mu - 1) ** 2 / 2, atol=1e-12)
    # classical line: S11 = 1 and both marginals equal 2 lam - 1
    xy = segment_sweep("AC_classical", 5).xy()
    np.testing.assert_allclose(xy[:, 0], 0, atol=1e-12)
    np.testing.assert_allclose(xy[:, 1], (2 * mu - 1) ** 2, atol=1e-12)
    # AE: S10 = 1, S01 = S11 = 2 lam - 1
    xy = segment_sweep("AE", 5).xy()
    c = (2 * mu - 1) ** 2
    np.testing.assert_allclose(xy[:, 0], (c - 1) / 2, atol=1e-12)
    np.testing.assert_allclose(xy[:, 1], (1 + c) / 2, atol=1e-12)


def test_segment_unknown_kind():
    with pytest.raises(SpecError):
        segment_sweep("AB", 5)


def test_haar_cloud_lies_on_pure_edge():
    xy = random_cloud(300, RandomSpec("haar-pure", seed=2)).xy()
    np.testing.assert_allclose(xy.sum(axis=1), 1, atol=1e-10)


def test_product_mixture_cloud_left_of_ac():
    for terms in range(1, 9):
        xy = random_cloud(100, RandomSpec("product-mixture", terms=terms, seed=terms)).xy()
        assert np.all(xy[:, 0] <= 1e-9)


def test_ginibre_cloud_inside_polygon():
    for rank in range(1, 5):
        ds = random_cloud(300, RandomSpec("ginibre-mixed", rank=rank, seed=rank))
        xy = ds.xy()
        assert np.all(hull_margin(xy[:, 0], xy[:, 1]) >= -1e-9)
        for p in ds.points:
            assert abs(p.x + p.y - (2 * p.purity - 1)) <= 1e-10


def test_cloud_points_are_independent_of_n():
    spec = RandomSpec("ginibre-mixed", rank=3, seed=5)
    small = random_cloud(5, spec).points
    big = random_cloud(20, spec).points
    assert small == big[:5]
    assert [p.param for p in small] == list(range(5))


def test_cloud_errors():
    with pytest.raises(SpecError):
        random_cloud(0, RandomSpec("haar-pure"))


def test_locate_is_invariant_under_local_unitaries(rng):
    def unitary():
        q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        return q

    for seed in range(20):
        st = states.random_state(RandomSpec("ginibre-mixed", rank=2, seed=seed))
        U = np.kron(unitary(), unitary())
        rotated = U @ st.rho @ U.conj().T
        a, b = locate(st), locate(rotated)
        assert (b.x, b.y, b.purity) == pytest.approx((a.x, a.y, a.purity), abs=1e-10)


def test_two_product_mixtures_stay_left_of_classical_line():
    a, b = JonesVector(0.2, 0.9j), JonesVector(1, -0.3)
    for lam in np.linspace(0, 1, 11):
        assert locate(states.two_product_mixture(a, b, V, H, lam)).x <= 1e-12


def test_region_point_bounds():
    RegionPoint(-0.5, 0.0, 0.25, "D")
    for x, y in [(-0.6, 0.0), (0.5, -0.1), (0.6, 0.6), (1.1, 0.0)]:
        with pytest.raises(ValueError):
            RegionPoint(x, y, 0.5, "bad")
    with pytest.raises(ValueError):
        RegionDataset([], "empty")


def test_segment_loci_invariant_under_rotated_replica():
    # the AE construction built from a rotated basis pair instead of (H, V)
    a = JonesVector(np.cos(0.4), np.exp(0.7j) * np.sin(0.4))
    b = a.orthogonal()
    base = segment_sweep("AE", 11).xy()
    for k, lam in enumerate(np.linspace(0, 1, 11)):
        p = locate(states.two_product_mixture(a, a, a, b, lam))
        assert (p.x, p.y) == pytest.approx(tuple(base[k]), abs=1e-12)

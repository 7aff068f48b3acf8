import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyflake.geometry import CenterFamily, CenterMapSpec, GeometryError, Rotation, contraction_ratio, vertices
from polyflake.ifs import (
    PRESETS,
    FlakeSpec,
    IfsSystem,
    Similarity,
    apply,
    build_flake,
    build_ngon,
    ccw_order,
    floored_probabilities,
    from_matrix,
    matrix_rows,
    parse_matrix,
    preset,
    to_matrix,
)


def act(system, pts):
    """Apply every map to every point through ``apply``; returns (N, k, 2)."""
    out = []
    for i, s in enumerate(system.maps):
        is_c = system.has_center and i == len(system.maps) - 1
        out.append([apply(s, p, is_c, s.rotation if is_c else 0.0) for p in pts])
    return np.array(out)


class TestApply:
    def test_fixed_point(self):
        s = Similarity(0.3, 0.0, (0.5, -0.2))
        np.testing.assert_allclose(apply(s, (0.5, -0.2)), (0.5, -0.2), atol=1e-15)

    def test_midpoint(self):
        np.testing.assert_allclose(apply(Similarity(0.5, 0.0, (0, 1)), (0, -1)), (0, 0), atol=1e-15)

    def test_center_rotation(self):
        s = Similarity(1 / 3, math.pi / 6)
        # the rotation is carried by the center_rotation argument, not the linear part
        got = apply(Similarity(1 / 3), (1, 0), is_center=True, center_rotation=math.pi / 6)
        np.testing.assert_allclose(got, (math.cos(math.pi / 6) / 3, math.sin(math.pi / 6) / 3), atol=1e-15)
        # and matches the similarity's own action
        np.testing.assert_allclose(s(np.array([[1.0, 0.0]]))[0], got, atol=1e-15)

    def test_similarity_call_fixed_point_form(self):
        s = Similarity(0.25, 0.7, (0.1, 0.9))
        p = np.array([[0.3, -0.4], [1.0, 0.0]])
        want = np.array(s.fixed_point) + (p - s.fixed_point) @ s.linear.T
        np.testing.assert_allclose(s(p), want, atol=1e-15)
        assert s.det == pytest.approx(0.0625, abs=1e-15)


class TestProbabilities:
    def test_floor(self):
        p = floored_probabilities([1.0, 1e-6])
        # floor is max/(25*2) = 0.02 before normalizing
        np.testing.assert_allclose(p, [1 / 1.02, 0.02 / 1.02], atol=1e-15)

    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_preset_probabilities(self, name):
        p = np.array(build_flake(preset(name)).probabilities)
        assert abs(p.sum() - 1) <= 1e-12
        assert p.min() >= p.max() / (25 * len(p)) - 1e-15

    def test_det_weights(self):
        sys = build_flake(preset("pentaflake"))
        d = np.array([s.scale ** 2 for s in sys.maps])
        np.testing.assert_allclose(sys.probabilities, d / d.sum(), atol=1e-15)

    def test_uniform(self):
        sys = build_ngon(5, 2, uniform=True)
        assert sys.probabilities == (0.2,) * 5


class TestBuild:
    def test_ngon_9_3(self):
        sys = build_ngon(9, 3)
        assert len(sys) == 9 and not sys.has_center
        np.testing.assert_allclose([s.fixed_point for s in sys.maps], vertices(9), atol=0)
        assert all(s.rotation == 0 and s.scale == contraction_ratio(9, 3) for s in sys.maps)

    def test_segment(self):
        sys = build_ngon(2, 1)
        assert [s.scale for s in sys.maps] == pytest.approx([0.5, 0.5], abs=1e-15)

    def test_hexaflake_all_thirds(self):
        sys = build_flake(preset("hexaflake"))
        assert len(sys) == 7 and sys.has_center
        np.testing.assert_allclose(sys.ratios, 1 / 3, atol=1e-12)
        assert sys.center_rotation == 0.0

    def test_seven_flake_gamma(self):
        sys = build_flake(FlakeSpec(7, center=CenterMapSpec("L", 1, "gamma")))
        assert sys.maps[-1].scale == pytest.approx(0.4355474117404254, abs=1e-14)
        assert sys.center_rotation == pytest.approx(0.3118313018625336, abs=1e-14)

    def test_plane_filling_hexagon(self):
        sys = build_flake(FlakeSpec(6, center=CenterMapSpec("L", 2, "half")))
        assert sys.maps[-1].scale == pytest.approx(1 / math.sqrt(3), abs=1e-12)
        assert sys.center_rotation == pytest.approx(math.pi / 6, abs=1e-15)
        # the areas add to exactly one copy of the whole
        assert sum(s.scale ** 2 for s in sys.maps) == pytest.approx(1.0, abs=1e-12)

    def test_explicit_radians(self):
        sys = build_flake(FlakeSpec(7, center=CenterMapSpec("M", 1, 0.25)))
        assert sys.center_rotation == 0.25

    @pytest.mark.parametrize("n", range(2, 25))
    def test_no_center_equals_ngon(self, n):
        a = build_flake(FlakeSpec(n))
        b = build_ngon(n, FlakeSpec(n).m_ratio)
        assert a.maps == b.maps and a.probabilities == b.probabilities

    def test_parity_error(self):
        with pytest.raises(GeometryError):
            FlakeSpec(6, center=CenterMapSpec("L", 1))

    def test_not_contractive(self):
        with pytest.raises(GeometryError):
            IfsSystem((Similarity(0.5), Similarity(1.0)))
        with pytest.raises(GeometryError):
            IfsSystem((Similarity(0.5),))

    def test_off_canonical_constructible_but_flagged(self):
        spec = FlakeSpec(9, 2)
        assert not spec.canonical
        assert len(build_flake(spec)) == 9

    def test_m_draw_does_not_change_attractor(self):
        a = build_flake(FlakeSpec(7, m_draw=3.5, m_ratio=2))
        b = build_flake(FlakeSpec(7, m_draw=3, m_ratio=2))
        assert a.maps == b.maps


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 40).flatmap(
        lambda n: st.tuples(st.just(n), st.sampled_from([None, "L", "M"]), st.integers(0, n // 2))
    )
)
def test_vertices_map_into_disk(args):
    n, fam, i = args
    center = None
    if fam is not None:
        l = 2 * i + n % 2
        if l > n or (fam == "M" and l == n):
            center = None
        else:
            center = CenterMapSpec(fam, l, "gamma" if fam == "L" else "half")
    try:
        sys = build_flake(FlakeSpec(n, center=center))
    except GeometryError:
        return  # degenerate center maps (zero scale) are rejected
    images = act(sys, vertices(n))
    assert np.all(np.hypot(images[..., 0], images[..., 1]) <= 1 + 1e-12)


class TestPresets:
    def test_names(self):
        assert set(PRESETS) == {
            "cantor", "sierpinski-triangle", "greek-cross", "vicsek",
            "sierpinski-pentagon", "pentaflake", "sierpinski-hexagon", "hexaflake",
        }

    def test_unknown(self):
        with pytest.raises(KeyError):
            preset("koch")

    def test_vicsek(self):
        sp = preset("vicsek")
        assert sp.n == 4 and sp.vertex_ratio == pytest.approx(1 / 3)
        assert sp.center.family is CenterFamily.L and sp.center.rotation is Rotation.NONE
        assert sp.center_ratio() == pytest.approx(1 / 3, abs=1e-12)

    def test_pentaflake(self):
        sp = preset("pentaflake")
        assert (sp.n, sp.m_ratio, sp.center.l, sp.center_angle()) == (5, 2, 1, 0.0)
        assert sp.label() == "F{5/2}[L1,0]"

    def test_triangle_and_cantor(self):
        assert preset("sierpinski-triangle").vertex_ratio == pytest.approx(0.5, abs=1e-15)
        assert preset("sierpinski-triangle").center is None
        assert preset("cantor").vertex_ratio == pytest.approx(1 / 3)
        assert preset("greek-cross").vertex_ratio == pytest.approx(contraction_ratio(4, 2))


class TestMatrix:
    def test_first_rows_9_2(self):
        lines = to_matrix(build_ngon(9, 2), order=ccw_order(9, 3)).splitlines()
        p = contraction_ratio(9, 2)
        assert lines[0].split() == [f"{p:.7f}", "0", "0.8660254"]
        assert lines[1].split() == ["0", f"{p:.7f}", "-0.5"]
        assert round(float(lines[0].split()[0]), 4) == 0.2831

    def test_same_third_column(self):
        a = parse_matrix(to_matrix(build_ngon(9, 2)))
        b = parse_matrix(to_matrix(build_ngon(9, 3)))
        np.testing.assert_array_equal(a[:, 2], b[:, 2])
        assert round(b[0, 0], 4) == 0.2578

    def test_ccw_order(self):
        assert ccw_order(9, 3) == [3, 2, 1, 0, 8, 7, 6, 5, 4]
        assert ccw_order(4) == [0, 3, 2, 1]

    def test_segment_scale(self):
        assert to_matrix(build_ngon(2, 1)).splitlines()[0].split()[0] == "0.5"

    def test_no_negative_zero(self):
        assert "-0 " not in to_matrix(build_ngon(12, 3)) and "\n-0\n" not in to_matrix(build_ngon(12, 3))

    @pytest.mark.parametrize("name", sorted(PRESETS) + ["seven"])
    def test_round_trip(self, name):
        spec = FlakeSpec(7, center=CenterMapSpec("L", 1, "gamma")) if name == "seven" else preset(name)
        sys = build_flake(spec)
        back = from_matrix(to_matrix(sys, decimals=12))
        pts = np.random.default_rng(1).uniform(-1, 1, (100, 2))
        for s, t in zip(sys.maps, back.maps):
            np.testing.assert_allclose(s(pts), t(pts), atol=1e-9)

    def test_default_precision_round_trip(self):
        sys = build_flake(preset("hexaflake"))
        back = from_matrix(to_matrix(sys))
        pts = np.random.default_rng(2).uniform(-1, 1, (100, 2))
        for s, t in zip(sys.maps, back.maps):
            np.testing.assert_allclose(s(pts), t(pts), atol=1e-6)

    def test_rows_shape(self):
        assert matrix_rows(build_flake(preset("pentaflake"))).shape == (12, 3)

    @pytest.mark.parametrize("text", ["1 2\n3 4\n", "1 2 3\n", "a b c\nd e f\n", ""])
    def test_bad_input(self, text):
        with pytest.raises(ValueError):
            from_matrix(text)

    def test_permuted_keeps_center_only_when_last(self):
        sys = build_flake(preset("hexaflake"))
        assert sys.permuted([1, 0, 2, 3, 4, 5, 6]).has_center
        assert not sys.permuted([6, 0, 1, 2, 3, 4, 5]).has_center
        with pytest.raises(ValueError):
            sys.permuted([0, 0, 1, 2, 3, 4, 5])

    def test_digest_stable(self):
        assert build_ngon(9, 3).digest() == build_ngon(9, 3).digest()
        assert build_ngon(9, 3).digest() != build_ngon(9, 2).digest()

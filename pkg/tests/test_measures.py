"""Information-measure tests: closed forms, frozen high-precision values,
scaling laws, and the 2D separability oracle."""
import math

import numpy as np
import pytest

from diracinfo.errors import DivergentIntegral
from diracinfo.hydrogenic import (
    PhysicalContext,
    QuantumState,
    angular_density,
    dirac_radial_density,
    schrodinger_radial_density,
)
from diracinfo.measures import (
    angular_measures,
    component_split,
    disequilibrium,
    entropic_power,
    fisher_information,
    measure_set,
    radial_measures,
    radial_profile,
    ratio_set,
    shannon_entropy,
)
from diracinfo.specfun import ln_gamma

GROUND = QuantumState(1, -1, 0.5)


def schr_parts(z, n, l):
    return schrodinger_radial_density(z, n, l)


class TestSchrodingerClosedForms:
    def test_ground_state_z1(self):
        rad = schr_parts(1.0, 1, 0)
        ang = angular_density(GROUND)
        s = shannon_entropy(rad, ang)
        assert s == pytest.approx(3.0 + math.log(math.pi), rel=1e-10)
        d = disequilibrium(rad, ang)
        assert d == pytest.approx(1.0 / (8 * math.pi), rel=1e-10)
        i = fisher_information(rad, ang)
        assert i == pytest.approx(4.0, rel=1e-10)

    def test_entropy_scaling_in_z(self):
        ang = angular_density(GROUND)
        s1 = shannon_entropy(schr_parts(1.0, 1, 0), ang)
        s19 = shannon_entropy(schr_parts(19.0, 1, 0), ang)
        assert s19 == pytest.approx(s1 - 3.0 * math.log(19.0), abs=1e-8)

    def test_disequilibrium_scaling_in_z(self):
        ang = angular_density(GROUND)
        d1 = disequilibrium(schr_parts(1.0, 1, 0), ang)
        d19 = disequilibrium(schr_parts(19.0, 1, 0), ang)
        assert d19 == pytest.approx(19.0**3 * d1, rel=1e-9)

    def test_fisher_scaling_in_z(self):
        ang = angular_density(GROUND)
        assert fisher_information(schr_parts(19.0, 1, 0), ang) == pytest.approx(
            4.0 * 19.0**2, rel=1e-10)

    def test_radial_closed_forms_19_3_1(self):
        # <r^-2> = Z^2/(n^3 (l+1/2)); radial Fisher = 4(Z^2/n^2 - l(l+1) <r^-2>)
        rm = radial_measures(schr_parts(19.0, 3, 1))
        z, n, l = 19.0, 3, 1
        rm2 = z * z / (n**3 * (l + 0.5))
        assert rm.r_minus2 == pytest.approx(rm2, rel=1e-10)
        assert rm.fisher == pytest.approx(4.0 * (z * z / n**2 - l * (l + 1) * rm2), rel=1e-10)
        assert rm.norm == pytest.approx(1.0, abs=1e-12)
        # frozen node-split mpmath values for entropy and disequilibrium parts
        assert rm.s == pytest.approx(-1.1265484979461555235, rel=1e-11)
        assert rm.d == pytest.approx(6.0642521862139917695, rel=1e-11)


class TestAngularMeasures:
    def test_s_state_parts(self):
        am = angular_measures(angular_density(GROUND))
        assert am.s == pytest.approx(math.log(4 * math.pi), rel=1e-14)
        assert am.d == pytest.approx(1.0 / (4 * math.pi), rel=1e-14)
        assert am.fisher == 0.0

    def test_stretched_p_fisher(self):
        # rho = (3/8 pi) sin^2: I_ang = 2 by elementary integration
        am = angular_measures(angular_density(QuantumState.from_nlj(2, 1, 1.5, 1.5)))
        assert am.fisher == pytest.approx(2.0, rel=1e-10)


class TestEntropicPower:
    def test_zero_entropy(self):
        assert entropic_power(0.0) == pytest.approx(1.0 / (2 * math.pi * math.e), rel=1e-15)

    def test_doubling_identity(self):
        s = 1.7
        assert entropic_power(s + 3 * math.log(2.0)) == pytest.approx(
            4.0 * entropic_power(s), rel=1e-13)

    def test_ground_state_value(self):
        # J(3 + ln pi) = e / (2 pi^(1/3))
        assert entropic_power(3.0 + math.log(math.pi)) == pytest.approx(
            math.e / (2.0 * math.pi ** (1.0 / 3.0)), rel=1e-13)


class TestDiracFrozenValues:
    def test_radial_set_z50_kappa2(self):
        st = QuantumState(5, 2, 1.5)
        ctx = PhysicalContext.for_state(50.0, st)
        rm = radial_measures(dirac_radial_density(ctx, st))
        assert rm.norm == pytest.approx(1.0, abs=1e-12)
        assert rm.s == pytest.approx(-1.1495231359955507265, rel=1e-11)
        assert rm.d == pytest.approx(5.9431835938078036957, rel=1e-11)
        assert rm.fisher == pytest.approx(196.96613695583725263, rel=1e-11)
        assert rm.r_minus2 == pytest.approx(8.5083998851205709937, rel=1e-11)

    def test_ground_z90_full_set(self):
        ctx = PhysicalContext.for_state(90.0, GROUND)
        ms = measure_set(ctx, GROUND, "dirac")
        assert ms.s == pytest.approx(-9.9013996256971495096, rel=1e-9)
        assert ms.d == pytest.approx(64620.121837178080427, rel=1e-9)
        assert ms.i == pytest.approx(63754.890142284454595, rel=1e-9)
        assert ms.c_lmc == pytest.approx(3.2377592437852477103, rel=1e-9)
        assert ms.c_fs == pytest.approx(5.073297587869469908, rel=1e-9)

    @pytest.mark.parametrize("z,expected", [
        (100.0, 108855.497449344014),
        (110.0, 251112.360909451803),
        (118.0, 3293039.4242799842),
    ])
    def test_ground_fisher_closed_form(self, z, expected):
        # for n'=0 the kernel is Q x^a e^-x (a-x)^2 with constant Q, so
        # I_rad = (Q/kappa_x)[a^2 G(a+1) - 2a G(a+2) + G(a+3)]
        ctx = PhysicalContext.for_state(z, GROUND)
        ms = measure_set(ctx, GROUND, "dirac")
        assert ms.i == pytest.approx(expected, rel=1e-9)
        rad = dirac_radial_density(ctx, GROUND)
        a, q, kx = rad.origin_exponent, rad._q_poly[0], rad.x_scale
        gam = lambda v: math.exp(ln_gamma(v))
        closed = q / kx * (a * a * gam(a + 1) - 2 * a * gam(a + 2) + gam(a + 3))
        assert ms.i == pytest.approx(closed, rel=1e-12)


class TestDivergence:
    def test_fisher_divergent_above_critical_z(self):
        ctx = PhysicalContext.for_state(119.0, GROUND)
        rad = dirac_radial_density(ctx, GROUND)
        with pytest.raises(DivergentIntegral):
            fisher_information(rad, angular_density(GROUND))

    def test_measure_set_carries_markers(self):
        ctx = PhysicalContext.for_state(119.0, GROUND)
        ms = measure_set(ctx, GROUND, "dirac")
        assert ms.fisher_divergent
        assert ms.i is None and ms.j is None and ms.c_fs is None
        assert ms.s is not None and ms.d is not None and ms.c_lmc is not None
        assert ms.c_lmc > 1.0

    def test_ratio_set_partial_when_divergent(self):
        ctx = PhysicalContext.for_state(119.0, GROUND)
        rs = ratio_set(ctx, GROUND)
        assert rs.zeta_fs is None
        assert rs.zeta_lmc is not None and 0.0 < rs.zeta_lmc < 1.0

    def test_disequilibrium_divergent_deep_klein_edge(self):
        # gamma < 1/4 for |kappa| = 1 once Z > ~132.7: D itself diverges
        st = QuantumState(1, -1, 0.5)
        ctx = PhysicalContext.for_state(135.0, st)
        ms = measure_set(ctx, st, "dirac")
        assert ms.d is None and ms.c_lmc is None
        assert math.isfinite(ms.s)


class TestComposition:
    def test_identities_exact(self):
        ctx = PhysicalContext.for_state(50.0, GROUND)
        for fw in ("dirac", "schrodinger"):
            ms = measure_set(ctx, GROUND, fw)
            assert ms.c_lmc == ms.d * math.exp(ms.s)
            assert ms.c_fs == ms.i * ms.j
            assert ms.j == entropic_power(ms.s)

    def test_nonrelativistic_limit_of_ratios(self):
        rs = ratio_set(PhysicalContext.for_state(1.0, GROUND), GROUND)
        assert 0.0 < rs.zeta_lmc < 1e-3
        assert 0.0 < rs.zeta_fs < 1e-3

    def test_dirac_ground_z1_near_schrodinger_constant(self):
        ms = measure_set(PhysicalContext.for_state(1.0, GROUND), GROUND, "dirac")
        assert ms.c_lmc == pytest.approx(math.exp(3.0) / 8.0, rel=1e-3)


class TestSeparability2D:
    @pytest.mark.parametrize("nlj", [(1, 0, 0.5, 0.5), (2, 1, 1.5, 0.5),
                                     (3, 2, 2.5, 1.5)])
    @pytest.mark.parametrize("framework", ["dirac", "schrodinger"])
    def test_against_2d_quadrature(self, nlj, framework):
        from oracle2d import measures_2d
        n, l, j, mj = nlj
        st = QuantumState.from_nlj(n, l, j, mj)
        ctx = PhysicalContext.for_state(50.0, st)
        if framework == "dirac":
            rad = dirac_radial_density(ctx, st)
        else:
            rad = schrodinger_radial_density(50.0, n, l)
        ang = angular_density(st)
        s2, d2, i2 = measures_2d(rad, ang, rad.origin_exponent)
        ms = measure_set(ctx, st, framework)
        assert ms.s == pytest.approx(s2, rel=1e-6)
        assert ms.d == pytest.approx(d2, rel=1e-6)
        assert ms.i == pytest.approx(i2, rel=1e-6)


class TestInvariances:
    def test_schrodinger_complexities_z_invariant(self):
        vals_lmc, vals_fs = [], []
        for z in (1.0, 7.0, 19.0, 55.0, 100.0):
            ctx = PhysicalContext.for_state(z, GROUND)
            ms = measure_set(ctx, GROUND, "schrodinger")
            vals_lmc.append(ms.c_lmc)
            vals_fs.append(ms.c_fs)
        assert np.ptp(vals_lmc) / vals_lmc[0] < 1e-8
        assert np.ptp(vals_fs) / vals_fs[0] < 1e-8

    def test_zeta_lmc_mj_invariant(self):
        st_base = QuantumState.from_nlj(4, 2, 2.5)
        zetas = []
        m = 0.5
        while m <= st_base.j:
            st = QuantumState.from_nlj(4, 2, 2.5, m)
            rs = ratio_set(PhysicalContext.for_state(90.0, st), st)
            zetas.append(rs.zeta_lmc)
            m += 1.0
        assert max(zetas) - min(zetas) <= 1e-8 * abs(zetas[0])

    def test_zeta_fs_mj_spread_reported(self, capsys):
        # weak m_j dependence: reported, not asserted with a tolerance
        st_base = QuantumState.from_nlj(4, 2, 2.5)
        zetas = []
        m = 0.5
        while m <= st_base.j:
            st = QuantumState.from_nlj(4, 2, 2.5, m)
            rs = ratio_set(PhysicalContext.for_state(90.0, st), st)
            zetas.append(rs.zeta_fs)
            m += 1.0
        spread = max(zetas) - min(zetas)
        print(f"zeta_FS m_j spread for (4,2,5/2) at Z=90: {spread:.3e} "
              f"(values {['%.6f' % z for z in zetas]})")
        assert all(z is not None for z in zetas)

    def test_dirac_ground_lmc_monotone_in_z(self):
        zs = np.linspace(1.0, 118.0, 50)
        vals = []
        for z in zs:
            ms = measure_set(PhysicalContext.for_state(float(z), GROUND), GROUND, "dirac")
            vals.append(ms.c_lmc)
        assert np.all(np.diff(vals) > 0.0)


class TestProfiles:
    def test_schrodinger_nodes_and_kernel_limit(self):
        st = QuantumState.from_nlj(5, 2, 1.5, 0.5)
        ctx = PhysicalContext.for_state(50.0, st)
        rad = schrodinger_radial_density(50.0, 5, 2)
        nodes = rad.interior_nodes()
        assert len(nodes) == 2
        pts = radial_profile(ctx, st, "schrodinger", np.asarray(nodes))
        for pt in pts:
            assert pt.d_of_r <= 1e-20
            assert pt.i_kernel > 0.0
        # the kernel value at the node equals the limit from nearby radii
        for r0 in nodes:
            near = radial_profile(ctx, st, "schrodinger",
                                  [r0 * (1 - 1e-7), r0 * (1 + 1e-7)])
            at = radial_profile(ctx, st, "schrodinger", [r0])[0]
            approx = 0.5 * (near[0].i_kernel + near[1].i_kernel)
            assert at.i_kernel == pytest.approx(approx, rel=1e-6)

    def test_dirac_density_positive_at_schrodinger_nodes(self):
        st = QuantumState.from_nlj(5, 2, 1.5, 0.5)
        ctx = PhysicalContext.for_state(50.0, st)
        nodes = schrodinger_radial_density(50.0, 5, 2).interior_nodes()
        pts = radial_profile(ctx, st, "dirac", np.asarray(nodes))
        assert all(pt.d_of_r > 0.0 for pt in pts)

    def test_kernel_nonnegative(self):
        st = QuantumState.from_nlj(6, 1, 0.5, 0.5)
        ctx = PhysicalContext.for_state(50.0, st)
        grid = np.geomspace(1e-3, 2.0, 500)
        for fw in ("dirac", "schrodinger"):
            pts = radial_profile(ctx, st, fw, grid)
            assert all(pt.i_kernel >= 0.0 for pt in pts)

    def test_dirac_kernel_vanishes_at_interior_minima(self):
        st = QuantumState.from_nlj(5, 2, 1.5, 0.5)
        ctx = PhysicalContext.for_state(50.0, st)
        rad = dirac_radial_density(ctx, st)
        nodes = schrodinger_radial_density(50.0, 5, 2).interior_nodes()
        grid = np.geomspace(1e-3, 2.0, 2000)
        peak = float(np.max(rad.fisher_kernel(grid)))
        for r0 in nodes:
            lo, hi = 0.8 * r0, 1.2 * r0
            flo, fhi = rad.drho(lo), rad.drho(hi)
            assert flo * fhi < 0.0
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fm = rad.drho(mid)
                if flo * fm <= 0.0:
                    hi, fhi = mid, fm
                else:
                    lo, flo = mid, fm
            assert rad.fisher_kernel(0.5 * (lo + hi)) <= 1e-10 * peak


class TestComponentSplit:
    def test_norm_partition(self):
        st = QuantumState.from_nlj(5, 2, 2.5, 0.5)
        ctx = PhysicalContext.for_state(90.0, st)
        rad = dirac_radial_density(ctx, st)
        from diracinfo.quadrature import QuadratureConfig, integrate_radial
        cfg = QuadratureConfig(origin_exponent=rad.origin_exponent + 2.0,
                               decay_rate=rad.decay_rate)
        g_part = integrate_radial(lambda r: rad.amplitudes(r)[0] ** 2 * r * r, cfg).value
        f_part = integrate_radial(lambda r: rad.amplitudes(r)[1] ** 2 * r * r, cfg).value
        assert g_part + f_part == pytest.approx(1.0, abs=1e-10)
        assert 0.0 < f_part < 0.05 * g_part  # small but nonzero at Z = 90

    def test_zero_interlacing(self):
        st = QuantumState.from_nlj(5, 2, 2.5, 0.5)
        ctx = PhysicalContext.for_state(90.0, st)
        rad = dirac_radial_density(ctx, st)
        zg = rad.component_zeros(0)
        zf = rad.component_zeros(1)
        assert len(zg) == st.n_r and len(zf) == st.n_r
        assert all(abs(a - b) > 1e-6 for a in zg for b in zf)
        merged = sorted([(z, "g") for z in zg] + [(z, "f") for z in zf])
        labels = [tag for _, tag in merged]
        assert all(labels[i] != labels[i + 1] for i in range(len(labels) - 1))

    def test_profile_arrays(self):
        st = QuantumState.from_nlj(5, 2, 2.5, 0.5)
        ctx = PhysicalContext.for_state(90.0, st)
        grid = np.geomspace(1e-3, 1.0, 200)
        r2g2, r2f2 = component_split(ctx, st, grid)
        assert np.all(r2g2 >= 0.0) and np.all(r2f2 >= 0.0)
        assert float(np.max(r2f2)) < 0.1 * float(np.max(r2g2))
        assert float(np.max(r2f2)) > 0.0

#include <cmath>
#include <complex>

#include "doctest.h"
#include "scs/integration.hpp"

using namespace scs;
using Complex = std::complex<double>;

namespace {

// Quadrature of prod_i |z_i|^(2 a_i) over the grid.
double integrate_radial_monomial(const QuadratureGrid& grid, const std::vector<int>& a) {
    double sum = 0.0;
    for (std::int64_t k = 0; k < grid.size(); ++k) {
        const auto z = grid.point(k);
        double v = grid.weight(k);
        for (int i = 0; i < grid.sphere_dim(); ++i) {
            const double t = std::norm(z[i]);
            for (int e = 0; e < a[static_cast<std::size_t>(i)]; ++e) v *= t;
        }
        sum += v;
    }
    return sum;
}

Complex integrate_phase_monomial(const QuadratureGrid& grid, const std::vector<int>& holo,
                                 const std::vector<int>& anti) {
    Complex sum(0.0, 0.0);
    for (std::int64_t k = 0; k < grid.size(); ++k) {
        const auto z = grid.point(k);
        Complex v(grid.weight(k), 0.0);
        for (int i = 0; i < grid.sphere_dim(); ++i) {
            for (int e = 0; e < holo[static_cast<std::size_t>(i)]; ++e) v *= z[i];
            for (int e = 0; e < anti[static_cast<std::size_t>(i)]; ++e) v *= std::conj(z[i]);
        }
        sum += v;
    }
    return sum;
}

}  // namespace

TEST_CASE("beta moments are exact rationals") {
    CHECK(beta_moment({0, 0}) == Rational(1, 4));
    CHECK(beta_moment({1, 1, 1}) == Rational(1, 960));
    CHECK(beta_moment({3, 1}) == beta_moment({1, 3}));
    CHECK(beta_moment({2, 0, 1}) == beta_moment({0, 2, 1}));
    CHECK_THROWS_AS(beta_moment({-1, 0}), InvalidSpec);
    CHECK_THROWS_AS(beta_moment({}), InvalidSpec);
}

TEST_CASE("polar grids integrate the sphere measure") {
    const auto g2 = polar_grid(2, 4, 5);
    CHECK(g2.total_weight() == doctest::Approx(M_PI * M_PI).epsilon(1e-13));
    CHECK(integrate_radial_monomial(g2, {1, 0}) ==
          doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-13));

    const auto g3 = polar_grid(3, 5, 4);
    CHECK(g3.total_weight() == doctest::Approx(std::pow(M_PI, 3) / 2.0).epsilon(1e-13));

    for (std::int64_t k = 0; k < g3.size(); ++k) {
        CHECK(g3.weight(k) > 0.0);
        CHECK(g3.point(k).squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
    }

    CHECK_THROWS_AS(polar_grid(1, 3, 3), InvalidOrder);
    CHECK_THROWS_AS(polar_grid(2, 0, 3), InvalidOrder);
    CHECK_THROWS_AS(polar_grid(2, 3, 0), InvalidOrder);
}

TEST_CASE("grid exactness against the beta oracle") {
    SplitMix64 rng(99);
    for (int modes : {2, 3, 4}) {
        const auto grid = polar_grid(modes, 6, 5);
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<int> a(static_cast<std::size_t>(modes), 0);
            int total = 0;
            for (auto& e : a) {
                e = rng.uniform_int(0, 3);
                total += e;
            }
            if (total > grid.exactness().max_radial_degree) continue;
            const double quad = integrate_radial_monomial(grid, a);
            const double reference = std::pow(2.0 * M_PI, modes) *
                                     beta_moment(a).convert_to<double>();
            CHECK(quad == doctest::Approx(reference).epsilon(1e-12));
        }
    }
}

TEST_CASE("phase orthogonality kills unmatched frequencies") {
    const auto grid = polar_grid(2, 4, 6);
    CHECK(std::abs(integrate_phase_monomial(grid, {1, 0}, {0, 1})) <= 1e-13);
    CHECK(std::abs(integrate_phase_monomial(grid, {2, 0}, {1, 0})) <= 1e-13);
    CHECK(std::abs(integrate_phase_monomial(grid, {3, 1}, {1, 3})) <= 1e-13);
}

TEST_CASE("sphere sampler is uniform and deterministic") {
    SphereSampler a(3, 2024), b(3, 2024);
    for (int t = 0; t < 50; ++t) {
        const auto pa = a.next();
        const auto pb = b.next();
        CHECK((pa.coords() - pb.coords()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(pa.coords().squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    // E[|z1|^2] = 1/N; |z1|^2 is Beta(1, N-1) so var = (N-1)/(N^2 (N+1)).
    const int count = 100000;
    SphereSampler s(3, 555);
    double mean = 0.0;
    for (int t = 0; t < count; ++t) mean += std::norm(s.next()[0]);
    mean /= count;
    const double sigma = std::sqrt((2.0 / (9.0 * 4.0)) / count);
    CHECK(std::abs(mean - 1.0 / 3.0) <= 4.0 * sigma);
}

TEST_CASE("resolution of identity on certified grids") {
    {
        const FamilySpec family = SU2FixedNFamily{4};
        const auto gram = roi_matrix(family, sufficient_grid(family));
        CHECK(roi_residual(gram, M_PI * M_PI / 5.0) <= 1e-10);
    }
    {
        const FamilySpec family = SU2ChargeFamily{2, 10};
        const auto gram = roi_matrix(family, sufficient_grid(family));
        CHECK(roi_residual(gram, M_PI * M_PI) <= 1e-8);
    }
    {
        const FamilySpec family = SU3ChargeFamily{1, 2, 6};
        const auto gram = roi_matrix(family, sufficient_grid(family));
        CHECK(roi_residual(gram, std::pow(M_PI, 3)) <= 1e-8);
    }
    {
        // The N = 4 radial chain, certified grid route at a small cutoff.
        const FamilySpec family = SUNChargeFamily{4, {1, 0, 1}, 3};
        const auto gram = roi_matrix(family, sufficient_grid(family));
        CHECK(roi_residual(gram, std::pow(M_PI, 4)) <= 1e-8);
    }
    {
        const FamilySpec family = SUNFixedNFamily{4, 3};
        const auto gram = roi_matrix(family, sufficient_grid(family));
        CHECK(roi_residual(gram, std::pow(M_PI, 4) / 120.0) <= 1e-10);
    }
}

TEST_CASE("parallel gram accumulation is bit-identical to serial") {
    const FamilySpec family = SU3ChargeFamily{1, 1, 8};
    const auto grid = sufficient_grid(family);
    unsetenv("SCS_THREADS");
    const auto serial = roi_matrix(family, grid);
    setenv("SCS_THREADS", "4", 1);
    const auto parallel = roi_matrix(family, grid);
    unsetenv("SCS_THREADS");
    CHECK((serial - parallel).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("roi_matrix rejects uncertified grids") {
    const FamilySpec family = SU2FixedNFamily{6};
    CHECK_THROWS_AS(roi_matrix(family, polar_grid(2, 2, 3)), ExactnessInsufficient);
    CHECK_THROWS_AS(roi_matrix(family, polar_grid(3, 8, 8)), ModeMismatch);
    CHECK(sufficient_grid(family).exactness().covers(family_requirement(family)));
}

TEST_CASE("monte carlo gram estimate converges toward the grid value") {
    const FamilySpec family = SU2FixedNFamily{2};
    const auto exact = roi_matrix(family, sufficient_grid(family));
    const std::int64_t base = 2000;
    double ratio_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const double small_err =
            (roi_matrix_mc(family, base, seed).gram - exact).cwiseAbs().maxCoeff();
        const double big_err =
            (roi_matrix_mc(family, 4 * base, seed).gram - exact).cwiseAbs().maxCoeff();
        ratio_sum += big_err / small_err;
    }
    CHECK(ratio_sum / 10.0 <= 0.7);

    // The diagonal-mean estimator lands within a few standard errors.
    const auto mc = roi_matrix_mc(family, 50000, 7);
    CHECK(std::abs(mc.diag_mean - roi_constant(family)) <= 4.0 * mc.diag_std_error);

    // Same seed, same estimate, to the last bit.
    const auto mc2 = roi_matrix_mc(family, 50000, 7);
    CHECK((mc.gram - mc2.gram).cwiseAbs().maxCoeff() == 0.0);
    CHECK(mc.diag_mean == mc2.diag_mean);
}

TEST_CASE("charge-state reconstruction from fixed-n states") {
    SphereSampler sampler(2, 31);
    const auto z = sampler.next();
    const int q = 1, terms = 4;
    const int n_max = q + 2 * (terms - 1);
    const auto grid = sufficient_grid(SU2FixedNFamily{n_max});

    const auto rebuilt = reconstruct_charge_from_fixed_n(z, q, terms, grid);
    const auto direct = su2_charge_cs(z, q, terms - 1);
    CHECK((rebuilt.amps - direct.amps).cwiseAbs().maxCoeff() <= 1e-8);

    // Only totals with n - q even contribute; off-parity kernels vanish.
    for (int n = 0; n <= n_max; ++n) {
        if ((n - q) % 2 != 0 || n < std::abs(q)) {
            CHECK(overlap_su2_kernel(z, z, n, q) == Complex(0.0, 0.0));
        }
    }

    const auto empty = reconstruct_charge_from_fixed_n(z, q, 0, grid);
    CHECK(empty.amps.cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(reconstruct_charge_from_fixed_n(z, q, 8, polar_grid(2, 2, 2)),
                    ExactnessInsufficient);
}

TEST_CASE("family helpers") {
    CHECK(family_mode_count(SUNChargeFamily{5, {0, 0, 0, 0}, 2}) == 5);
    CHECK(family_is_charge(SU2ChargeFamily{1, 3}));
    CHECK_FALSE(family_is_charge(SU3FixedNFamily{2}));
    CHECK(roi_constant(SU2FixedNFamily{3}) == doctest::Approx(M_PI * M_PI / 4.0));
    CHECK(roi_constant(SU3FixedNFamily{2}) ==
          doctest::Approx(std::pow(M_PI, 3) / 12.0).epsilon(1e-15));
    CHECK(roi_constant(SU3ChargeFamily{1, 1, 4}) == doctest::Approx(std::pow(M_PI, 3)));
}

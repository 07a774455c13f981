#include <cmath>
#include <complex>

#include "doctest.h"
#include "scs/integration.hpp"
#include "scs/operators.hpp"
#include "scs/states.hpp"

using namespace scs;
using Complex = std::complex<double>;

namespace {

SpherePoint sphere2(Complex z1, Complex z2) {
    Eigen::VectorXcd v(2);
    v << z1, z2;
    return SpherePoint(std::move(v));
}

SpherePoint sphere3(Complex z1, Complex z2, Complex z3) {
    Eigen::VectorXcd v(3);
    v << z1, z2, z3;
    return SpherePoint(std::move(v));
}

// Normalized point from arbitrary coordinates (for generic-direction tests).
SpherePoint unit2(Complex z1, Complex z2) {
    Eigen::VectorXcd v(2);
    v << z1, z2;
    v /= v.norm();
    return SpherePoint(std::move(v));
}

SpherePoint unit3(Complex z1, Complex z2, Complex z3) {
    Eigen::VectorXcd v(3);
    v << z1, z2, z3;
    v /= v.norm();
    return SpherePoint(std::move(v));
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("sphere point validation") {
    CHECK_THROWS_AS(sphere2(Complex(1.0, 0.0), Complex(0.5, 0.0)), InvalidSpec);
    const auto z = sphere2(Complex(0.6, 0.0), Complex(0.0, 0.8));
    CHECK(z.dim() == 2);
}

TEST_CASE("canonical coherent state") {
    const auto vacuum = canonical_cs(Complex(0.0, 0.0), 4);
    CHECK(vacuum.amps[0] == Complex(1.0, 0.0));
    CHECK(vacuum.amps.tail(4).cwiseAbs().maxCoeff() == 0.0);

    const auto unit = canonical_cs(Complex(1.0, 0.0), 5);
    CHECK(unit.amps[2].real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));

    // Truncated squared norm approaches exp(|z|^2).
    const double z2 = 0.64;
    const auto big = canonical_cs(Complex(0.8, 0.0), 30);
    CHECK(norm2(big) == doctest::Approx(std::exp(z2)).epsilon(1e-13));
}

TEST_CASE("su2 fixed-spin states") {
    const auto z = sphere2(Complex(0.6, 0.0), Complex(0.0, 0.8));
    const auto one = su2_fixed_spin(z, 1);
    CHECK(one.amps[0] == Complex(0.6, 0.0));
    CHECK(one.amps[1] == Complex(0.0, 0.8));

    const auto sym = su2_fixed_spin(sphere2(kInvSqrt2, kInvSqrt2), 2);
    CHECK(sym.amps[0].real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sym.amps[1].real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    CHECK(sym.amps[2].real() == doctest::Approx(0.5).epsilon(1e-15));

    SphereSampler sampler(2, 7);
    for (int n : {0, 1, 3, 7, 10}) {
        CHECK(norm2(su2_fixed_spin(sampler.next(), n)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("su2 charge states") {
    const auto z = sphere2(Complex(0.6, 0.0), Complex(0.0, 0.8));
    const auto ket = su2_charge_cs(z, 0, 3);
    CHECK(ket.amps[0] == Complex(1.0, 0.0));  // sqrt(1!/(0! 0!)) with zero exponents

    // |amp at r=1| for q=1 at |z1| = |z2| = 1/sqrt(2): sqrt(4!/(2!1!)) / (2 sqrt 2).
    const auto even = su2_charge_cs(sphere2(kInvSqrt2, kInvSqrt2), 1, 2);
    CHECK(std::abs(even.amps[1]) == doctest::Approx(1.2247448713915890).epsilon(1e-14));

    // Exact charge eigenvalue, q of both signs.
    for (int q : {3, 0, -2}) {
        const auto basis = enumerate_sector(su2_charge_spec(q, 5));
        const auto charge = sun_cartan_charges(basis)[0];
        const auto state = su2_charge_cs(z, q, 5);
        const auto image = apply(charge, state);
        CHECK((image.amps - double(q) * state.amps).norm() == 0.0);
    }

    // Charge families are not normalized; leading term alone exceeds 1 here.
    const auto fat = su2_charge_cs(sphere2(Complex(0.8, 0.0), Complex(0.6, 0.0)), 1, 10);
    CHECK(norm2(fat) > 1.0);
}

TEST_CASE("su2 charge mirror at q < 0 swaps modes") {
    const auto z = unit2(Complex(0.28, 0.45), Complex(0.7, -0.48));
    const auto zs = unit2(Complex(0.7, -0.48), Complex(0.28, 0.45));
    const auto neg = su2_charge_cs(z, -3, 6);
    const auto pos = su2_charge_cs(zs, 3, 6);
    // Same ladder through swapped modes; products associate differently, so
    // agreement is to rounding, not bit-level.
    CHECK((neg.amps - pos.amps).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("su3 states") {
    const auto z = sphere3(Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.0, 0.0));
    const auto one = su3_fixed_n(z, 1);
    CHECK(one.amps[0] == Complex(0.5, 0.5));
    CHECK(one.amps[1] == Complex(0.5, -0.5));
    CHECK(one.amps[2] == Complex(0.0, 0.0));

    const auto axis = su3_fixed_n(sphere3(1.0, 0.0, 0.0), 2);
    CHECK(std::abs(axis.amps[0]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(axis.amps.tail(axis.amps.size() - 1).cwiseAbs().maxCoeff() == 0.0);

    SphereSampler sampler(3, 11);
    for (int n : {0, 2, 5, 8}) {
        CHECK(norm2(su3_fixed_n(sampler.next(), n)) == doctest::Approx(1.0).epsilon(1e-12));
    }

    // Leading charge-state coefficients.
    const auto flat = su3_charge_cs(sphere3(1.0, 0.0, 0.0), 0, 0, 2);
    CHECK(flat.amps[0].real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto lone = su3_charge_cs(sphere3(1.0, 0.0, 0.0), 1, 1, 2);
    CHECK(lone.amps[0].real() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));

    // Exact charge and hypercharge eigenvalues.
    const auto zc = unit3(Complex(0.4, 0.3), Complex(0.5, -0.2), Complex(0.1, 0.67));
    for (const auto& [q, l] : std::vector<std::pair<int, int>>{{1, 2}, {-1, 0}, {0, 3}}) {
        const auto ket = su3_charge_cs(zc, q, l, 6);
        const auto cartan = sun_cartan_charges(ket.basis);
        const auto hyper = cartan[0] + Complex(2.0, 0.0) * cartan[1];
        CHECK((apply(cartan[0], ket).amps - double(q) * ket.amps).norm() == 0.0);
        CHECK((apply(hyper, ket).amps - double(2 * l - q) * ket.amps).norm() == 0.0);
    }
}

TEST_CASE("sun constructors reduce to the low-rank ones bit-for-bit") {
    const auto z2 = unit2(Complex(0.28, 0.45), Complex(0.7, -0.48));
    CHECK((sun_fixed_n(z2, 4).amps - su2_fixed_spin(z2, 4).amps).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sun_charge_cs(z2, {2}, 7).amps - su2_charge_cs(z2, 2, 7).amps)
              .cwiseAbs()
              .maxCoeff() == 0.0);

    const auto z3 = unit3(Complex(0.4, 0.3), Complex(0.5, -0.2), Complex(0.1, 0.67));
    CHECK((sun_fixed_n(z3, 3).amps - su3_fixed_n(z3, 3).amps).cwiseAbs().maxCoeff() == 0.0);
    // (q1, q2) = (q, l - q) reproduces the (q, l) ladder.
    CHECK((sun_charge_cs(z3, {1, 1}, 5).amps - su3_charge_cs(z3, 1, 2, 5).amps)
              .cwiseAbs()
              .maxCoeff() == 0.0);

    Eigen::VectorXcd v4(4);
    v4 << Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(0.5, 0.0), Complex(0.0, 0.5);
    const SpherePoint z4{std::move(v4)};
    const auto four = sun_fixed_n(z4, 1);
    for (int i = 0; i < 4; ++i) CHECK(four.amps[i] == z4[i]);
    CHECK(norm2(sun_fixed_n(z4, 5)) == doctest::Approx(1.0).epsilon(1e-12));

    // n4 = 0 coefficient of the all-zero-charge N=4 ladder: sqrt(3!).
    const auto ladder = sun_charge_cs(z4, {0, 0, 0}, 2);
    CHECK(std::abs(ladder.amps[0]) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));

    CHECK_THROWS_AS(sun_charge_cs(z4, {1, -2, 0}, 2), InvalidSpec);
}

TEST_CASE("overlap kernels match summed inner products") {
    SphereSampler sampler(2, 23);
    const auto w = sampler.next();
    const auto z = sampler.next();

    CHECK(overlap_su2_kernel(w, z, 1, 0) == Complex(0.0, 0.0));  // parity mismatch

    const Complex cross = std::conj(w[0]) * z[0] * std::conj(w[1]) * z[1];
    const Complex expected = std::sqrt(12.0) * cross;  // n=2, q=0, p=1
    CHECK(std::abs(overlap_su2_kernel(w, z, 2, 0) - expected) <= 1e-14);

    for (const auto& [n, q] : std::vector<std::pair<int, int>>{{5, 1}, {4, -2}, {7, 7}, {6, 0}}) {
        const auto numeric = fock_inner(su2_fixed_spin(w, n), su2_charge_cs(z, q, 8));
        CHECK(std::abs(overlap_su2_kernel(w, z, n, q) - numeric) <= 1e-10);
    }

    SphereSampler sampler3(3, 29);
    const auto w3 = sampler3.next();
    const auto z3 = sampler3.next();
    CHECK(overlap_su3_kernel(w3, z3, 3, 0, 1) == Complex(0.0, 0.0));  // n != 2 mod 3
    const Complex cross3 = std::conj(w3[0]) * z3[0] * std::conj(w3[1]) * z3[1];
    CHECK(std::abs(overlap_su3_kernel(w3, z3, 2, 0, 1) - std::sqrt(48.0) * cross3) <= 1e-13);
    for (const auto& [n, q, l] :
         std::vector<std::array<int, 3>>{{4, 0, 2}, {8, 1, 3}, {7, -1, 0}}) {
        const auto numeric = fock_inner(su3_fixed_n(w3, n), su3_charge_cs(z3, q, l, 8));
        CHECK(std::abs(overlap_su3_kernel(w3, z3, n, q, l) - numeric) <= 1e-10);
    }
}

TEST_CASE("euler angles to sphere point") {
    const auto north = euler_to_sphere({0.0, 0.0, 0.0});
    CHECK(north[0] == Complex(1.0, 0.0));
    CHECK(north[1] == Complex(0.0, 0.0));

    const auto south = euler_to_sphere({M_PI, 0.0, 0.0});
    CHECK(std::abs(south[0]) <= 1e-15);
    CHECK(std::abs(south[1] - Complex(1.0, 0.0)) <= 1e-15);

    SplitMix64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const EulerAngles a{rng.uniform01() * M_PI, (rng.uniform01() - 0.5) * 6.0,
                            (rng.uniform01() - 0.5) * 6.0};
        CHECK(euler_to_sphere(a).coords().squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(euler_to_sphere({-0.5, 0.0, 0.0}), InvalidSpec);
}

TEST_CASE("group action in closed form") {
    const auto rest = group_action_su2({0.0, 0.0, 0.0}, 5);
    CHECK(rest.amps[0] == Complex(1.0, 0.0));
    CHECK(rest.amps.tail(5).cwiseAbs().maxCoeff() == 0.0);

    // j = 1/2 hand evaluation.
    const EulerAngles a{1.1, 0.7, -0.4};
    const auto half = group_action_su2(a, 1);
    const Complex psi_phase = std::exp(Complex(0.0, 0.5 * a.psi));
    const Complex up = psi_phase * std::exp(Complex(0.0, 0.5 * a.phi)) * std::cos(0.55);
    const Complex down = psi_phase * std::exp(Complex(0.0, -0.5 * a.phi)) * std::sin(0.55);
    CHECK(std::abs(half.amps[0] - up) <= 1e-15);
    CHECK(std::abs(half.amps[1] - down) <= 1e-15);

    // Equivalence with the sphere-point construction.
    for (int two_j : {1, 2, 5}) {
        const auto via_sphere = su2_fixed_spin(euler_to_sphere(a), two_j);
        const auto via_action = group_action_su2(a, two_j);
        CHECK((via_sphere.amps - via_action.amps).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("pair coherent states") {
    const auto origin = pair_cs_bhaumik({Complex(0.0, 0.0)}, 3, 5);
    CHECK(std::abs(origin.amps[0] - Complex(1.0, 0.0)) <= 1e-14);
    CHECK(origin.amps.tail(5).cwiseAbs().maxCoeff() == 0.0);

    const PlanePoint zeta{Complex(0.9, -0.7)};
    const auto ket = pair_cs_bhaumik(zeta, 2, 25);
    CHECK(norm2(ket) == doctest::Approx(1.0).epsilon(1e-13));  // cutoff far past the tail

    const auto charge = sun_cartan_charges(ket.basis)[0];
    CHECK((apply(charge, ket).amps - 2.0 * ket.amps).norm() == 0.0);

    const auto lowered = apply(lower_all_modes(ket.basis), ket);
    for (std::int64_t i = 0; i + 1 < ket.basis->dim(); ++i) {
        CHECK(std::abs(lowered.amps[i] - zeta.zeta * ket.amps[i]) <= 1e-12);
    }
}

TEST_CASE("fan three-mode plane states") {
    const auto origin = fan_su3_cs({Complex(0.0, 0.0)}, 1, 1, 4);
    CHECK(origin.basis->state(0) == OccupationState{2, 1, 0});
    CHECK(std::abs(origin.amps[0] - Complex(1.0, 0.0)) <= 1e-14);

    const PlanePoint zeta{Complex(-0.6, 0.8)};
    const int qbar = 1, y = 2;
    const auto ket = fan_su3_cs(zeta, qbar, y, 20);
    const auto cartan = sun_cartan_charges(ket.basis);
    const auto hyper = cartan[0] + Complex(2.0, 0.0) * cartan[1];
    CHECK((apply(cartan[0], ket).amps - double(2 * qbar - y) * ket.amps).norm() == 0.0);
    CHECK((apply(hyper, ket).amps - double(3 * y) * ket.amps).norm() == 0.0);

    const auto lowered = apply(lower_all_modes(ket.basis), ket);
    for (std::int64_t i = 0; i + 1 < ket.basis->dim(); ++i) {
        CHECK(std::abs(lowered.amps[i] - zeta.zeta * ket.amps[i]) <= 1e-12);
    }

    CHECK_THROWS_AS(fan_su3_cs(zeta, 3, -2, 4), InvalidSpec);
}

TEST_CASE("eriksson three-oscillator su(2) realization") {
    const auto basis = enumerate_sector(fixed_total_spec(3, 2));
    const auto gens = eriksson_generators(basis);
    const auto lhs = commutator(gens.generators[0], gens.generators[1]);
    CHECK((lhs - Complex(0.0, 1.0) * gens.generators[2]).max_abs() <= 1e-15);

    const auto q = su3_generators(basis).generators;
    CHECK((gens.generators[2] - Complex(2.0, 0.0) * q[1]).max_abs() == 0.0);
    CHECK((gens.generators[0] - Complex(2.0, 0.0) * q[6]).max_abs() == 0.0);
    CHECK((gens.generators[1] + Complex(2.0, 0.0) * q[4]).max_abs() == 0.0);

    const auto c = number_total(basis);
    for (const auto& g : gens.generators) CHECK(commutator(c, g).max_abs() == 0.0);

    CHECK_THROWS_AS(eriksson_generators(enumerate_sector(fixed_total_spec(2, 2))), ModeMismatch);
}

TEST_CASE("inner products and expectations") {
    const auto z = sphere2(Complex(0.6, 0.0), Complex(0.0, 0.8));
    const auto w = sphere2(Complex(0.0, 1.0), Complex(0.0, 0.0));
    const auto x = su2_fixed_spin(z, 1);
    CHECK(inner(x, x).real() == doctest::Approx(norm2(x)).epsilon(1e-15));
    CHECK(inner(x, x).imag() == 0.0);

    const Complex expected = std::conj(w[0]) * z[0] + std::conj(w[1]) * z[1];
    CHECK(std::abs(inner(su2_fixed_spin(w, 1), x) - expected) <= 1e-15);

    CHECK_THROWS_AS(inner(x, su2_fixed_spin(z, 2)), SectorMismatch);

    // <J3> = q/2 * |ket|^2 on a charge state.
    const int q = 3;
    const auto ket = su2_charge_cs(z, q, 8);
    const auto j3 = su2_generators(ket.basis).generators[2];
    const auto val = expectation(j3, ket);
    CHECK(val.real() == doctest::Approx(0.5 * q * norm2(ket)).epsilon(1e-14));
    CHECK(std::abs(val.imag()) <= 1e-14 * norm2(ket));
}

TEST_CASE("charge tail diagnostics") {
    // At |z1 z2| = 1/2 the ladder series diverges; the edge ratio exceeds 1.
    const auto edge = sphere2(kInvSqrt2, kInvSqrt2);
    const double ratio = su2_charge_tail_ratio(edge, 2, 5);
    CHECK(ratio == doctest::Approx(14.0 * 15.0 / (8.0 * 6.0) * 0.25).epsilon(1e-13));
    CHECK(ratio >= 1.0);

    const auto tame = sphere2(Complex(0.95, 0.0), Complex(0.0, std::sqrt(1.0 - 0.9025)));
    CHECK(su2_charge_tail_ratio(tame, 2, 5) < 1.0);
}

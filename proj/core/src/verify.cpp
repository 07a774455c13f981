#include "scs/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

namespace scs {

namespace {

using Complex = std::complex<double>;
using Params = std::vector<std::pair<std::string, std::string>>;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        const auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(int v) {
    return std::to_string(v);
}

double max_amp_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

std::string family_name(const FamilySpec& family) {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, SU2FixedNFamily>) return "su2-fixed";
            if constexpr (std::is_same_v<T, SU2ChargeFamily>) return "su2-charge";
            if constexpr (std::is_same_v<T, SU3FixedNFamily>) return "su3-fixed";
            if constexpr (std::is_same_v<T, SU3ChargeFamily>) return "su3-charge";
            if constexpr (std::is_same_v<T, SUNFixedNFamily>) return "sun-fixed";
            return "sun-charge";
        },
        family);
}

Params family_params(const FamilySpec& family) {
    return std::visit(
        [](const auto& f) -> Params {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, SU2FixedNFamily>) {
                return {{"n", fmt(f.n)}};
            } else if constexpr (std::is_same_v<T, SU2ChargeFamily>) {
                return {{"q", fmt(f.q)}, {"rmax", fmt(f.r_max)}};
            } else if constexpr (std::is_same_v<T, SU3FixedNFamily>) {
                return {{"n", fmt(f.n)}};
            } else if constexpr (std::is_same_v<T, SU3ChargeFamily>) {
                return {{"q", fmt(f.q)}, {"l", fmt(f.l)}, {"pmax", fmt(f.p_max)}};
            } else if constexpr (std::is_same_v<T, SUNFixedNFamily>) {
                return {{"modes", fmt(f.modes)}, {"n", fmt(f.n)}};
            } else {
                std::string charges;
                for (std::size_t i = 0; i < f.charges.size(); ++i) {
                    if (i) charges += ',';
                    charges += fmt(f.charges[i]);
                }
                return {{"modes", fmt(f.modes)}, {"charges", charges}, {"cutoff", fmt(f.cutoff)}};
            }
        },
        family);
}

}  // namespace

CheckReport make_report(std::string name, Params params, double residual, double tolerance,
                        double runtime_ms) {
    CheckReport report;
    report.name = std::move(name);
    report.params = std::move(params);
    report.residual = residual;
    report.tolerance = tolerance;
    report.passed = residual <= tolerance;
    report.runtime_ms = runtime_ms;
    return report;
}

CheckReport check_lie_algebra(const GeneratorSet& gens) {
    Timer timer;
    const int d = static_cast<int>(gens.generators.size());
    const auto& basis = gens.generators.empty() ? nullptr : gens.generators.front().domain();
    double residual = 0.0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            SparseOperator lhs = commutator(gens.generators[static_cast<std::size_t>(a)],
                                            gens.generators[static_cast<std::size_t>(b)]);
            for (int c = 0; c < d; ++c) {
                const double fabc = gens.f(a, b, c);
                if (fabc == 0.0) continue;
                lhs = lhs - (Complex(0.0, fabc) * gens.generators[static_cast<std::size_t>(c)]);
            }
            residual = std::max(residual, lhs.max_abs());
        }
    }
    Params params{{"generators", fmt(d)}};
    if (basis) params.emplace_back("dim", fmt(static_cast<int>(basis->dim())));
    return make_report("lie-algebra", std::move(params), residual, 1e-12, timer.ms());
}

CheckReport check_casimir(BasisPtr basis) {
    Timer timer;
    if (basis->mode_count() != 2) {
        throw ModeMismatch("check_casimir: needs a 2-mode sector");
    }
    const auto gens = su2_generators(basis);
    SparseOperator jj = gens.generators[0] * gens.generators[0];
    for (int a = 1; a < 3; ++a) {
        jj = jj + gens.generators[static_cast<std::size_t>(a)] *
                      gens.generators[static_cast<std::size_t>(a)];
    }
    const auto c = number_total(basis);
    const auto rhs = Complex(0.25, 0.0) * (c * c + Complex(2.0, 0.0) * c);
    const double residual = (jj - rhs).max_abs();
    return make_report("casimir-factorization", {{"dim", fmt(static_cast<int>(basis->dim()))}},
                       residual, 1e-12, timer.ms());
}

CheckReport check_eigen(const SparseOperator& op, const Ket& ket, Complex lambda) {
    Timer timer;
    const Ket image = apply(op, ket);
    const double residual =
        (image.amps - lambda * ket.amps).norm() / std::max(1.0, ket.amps.norm());
    const double tolerance = op.is_diagonal() ? 1e-12 : 1e-10;
    Params params{{"lambda_re", fmt(lambda.real())}, {"lambda_im", fmt(lambda.imag())}};
    return make_report("eigen-relation", std::move(params), residual, tolerance, timer.ms());
}

CheckReport check_nonlinear_relation(const SpherePoint& z, int q, int r_max) {
    Timer timer;
    if (r_max < 2) throw InvalidSpec("check_nonlinear_relation: r_max must be >= 2");
    const auto basis = enumerate_sector(su2_charge_spec(q, r_max));
    const Ket ket = su2_charge_cs(z, q, r_max);

    Eigen::VectorXcd f_diag(basis->dim());
    for (std::int64_t i = 0; i < basis->dim(); ++i) {
        const double n = static_cast<double>(total_occupation(basis->state(i)));
        f_diag[i] = 1.0 / std::sqrt((n + 3.0) * (n + 2.0));
    }
    const auto f_of_c = SparseOperator::diagonal(basis, f_diag);
    const Ket lhs = apply(f_of_c, apply(lower_all_modes(basis), ket));
    const Eigen::VectorXcd rhs = (z[0] * z[1]) * ket.amps;

    // The top rung is the truncation boundary; the identity holds on the
    // rungs below it.
    double residual = 0.0;
    for (std::int64_t i = 0; i + 1 < basis->dim(); ++i) {
        residual = std::max(residual, std::abs(lhs.amps[i] - rhs[i]));
    }
    Params params{{"q", fmt(q)}, {"rmax", fmt(r_max)}};
    return make_report("nonlinear-relation", std::move(params), residual, 1e-12, timer.ms());
}

CheckReport check_group_action(int two_j, std::span<const EulerAngles> angles) {
    Timer timer;
    if (two_j < 0) throw InvalidSpec("check_group_action: 2j must be >= 0");
    const auto basis = enumerate_sector(fixed_total_spec(2, two_j));
    const auto gens = su2_generators(basis);
    const auto hw_index = basis->index_of(OccupationState{two_j, 0}).value();

    double residual = 0.0;
    for (const auto& a : angles) {
        const Eigen::MatrixXcd u = hermitian_expm(gens.generators[2], a.phi) *
                                   hermitian_expm(gens.generators[1], -a.theta) *
                                   hermitian_expm(gens.generators[2], a.psi);
        const Eigen::VectorXcd chain = u.col(hw_index);
        const Ket closed = group_action_su2(a, two_j);
        residual = std::max(residual, max_amp_diff(chain, closed.amps));
    }
    Params params{{"two_j", fmt(two_j)}, {"angles", fmt(static_cast<int>(angles.size()))}};
    return make_report("group-action-equivalence", std::move(params), residual, 1e-10,
                       timer.ms());
}

CheckReport check_roi(const FamilySpec& family, double expected_constant) {
    Timer timer;
    const QuadratureGrid grid = sufficient_grid(family);
    const Eigen::MatrixXcd gram = roi_matrix(family, grid);
    const double residual = roi_residual(gram, expected_constant);
    const double tolerance = family_is_charge(family) ? 1e-8 : 1e-10;
    Params params = family_params(family);
    params.emplace_back("constant", fmt(expected_constant));
    params.emplace_back("nodes", fmt(static_cast<int>(grid.size())));
    return make_report("roi-" + family_name(family), std::move(params), residual, tolerance,
                       timer.ms());
}

CheckReport check_overlap_kernels(int trials, std::uint64_t seed) {
    Timer timer;
    if (trials < 1) throw InvalidSpec("check_overlap_kernels: trials must be >= 1");
    SplitMix64 rng(seed);
    SphereSampler sample2(2, rng.next());
    SphereSampler sample3(3, rng.next());

    double residual = 0.0;
    for (int t = 0; t < trials; ++t) {
        // SU(2): n = 2p + q.
        {
            const SpherePoint w = sample2.next();
            const SpherePoint z = sample2.next();
            const int q = rng.uniform_int(-4, 4);
            const int p = rng.uniform_int(0, 5) + std::max(0, -q);
            const int n = 2 * p + q;
            const Complex kernel = overlap_su2_kernel(w, z, n, q);
            const Complex numeric =
                fock_inner(su2_fixed_spin(w, n), su2_charge_cs(z, q, p + 3));
            residual = std::max(residual, std::abs(kernel - numeric));
            // One step off the selection rule: exactly zero on both routes.
            const Complex off_kernel = overlap_su2_kernel(w, z, n + 1, q);
            const Complex off_numeric =
                fock_inner(su2_fixed_spin(w, n + 1), su2_charge_cs(z, q, p + 4));
            residual = std::max(residual, std::abs(off_kernel));
            residual = std::max(residual, std::abs(off_numeric));
        }
        // SU(3): n = 3p + 2l - q.
        {
            const SpherePoint w = sample3.next();
            const SpherePoint z = sample3.next();
            const int l = rng.uniform_int(0, 4);
            const int q = rng.uniform_int(-3, std::min(3, l));
            const int p = rng.uniform_int(0, 4);
            const int n = 3 * p + 2 * l - q;
            const Complex kernel = overlap_su3_kernel(w, z, n, q, l);
            const Complex numeric =
                fock_inner(su3_fixed_n(w, n), su3_charge_cs(z, q, l, p + 3));
            residual = std::max(residual, std::abs(kernel - numeric));
            const Complex off_kernel = overlap_su3_kernel(w, z, n + 1, q, l);
            const Complex off_numeric =
                fock_inner(su3_fixed_n(w, n + 1), su3_charge_cs(z, q, l, p + 4));
            residual = std::max(residual, std::abs(off_kernel));
            residual = std::max(residual, std::abs(off_numeric));
        }
    }
    Params params{{"trials", fmt(trials)}, {"seed", std::to_string(seed)},
                  {"rng", kRngAlgorithm}};
    return make_report("overlap-kernels", std::move(params), residual, 1e-10, timer.ms());
}

std::vector<EulerAngles> default_angle_grid() {
    const double thetas[] = {0.4, 1.3, 2.6};
    const double phis[] = {-2.2, 0.7, 2.9};
    const double psis[] = {-1.9, 0.3, 2.5};
    std::vector<EulerAngles> grid;
    grid.reserve(27);
    for (double t : thetas) {
        for (double p : phis) {
            for (double s : psis) grid.push_back(EulerAngles{t, p, s});
        }
    }
    return grid;
}

namespace {

// Aggregated eigen-relation sweep over random family draws. All operators
// involved are diagonal charges, so the tolerance stays at 1e-12.
CheckReport eigen_relation_sweep(int draws, std::uint64_t seed) {
    Timer timer;
    SplitMix64 rng(seed);
    SphereSampler sample2(2, rng.next());
    SphereSampler sample3(3, rng.next());
    double residual = 0.0;
    for (int t = 0; t < draws; ++t) {
        switch (t % 4) {
            case 0: {  // charge eigenvalue on the SU(2) ladder
                const int q = rng.uniform_int(-5, 5);
                const int r_max = rng.uniform_int(2, 12);
                const auto basis = enumerate_sector(su2_charge_spec(q, r_max));
                const Ket ket = su2_charge_cs(sample2.next(), q, r_max);
                const auto charge = sun_cartan_charges(basis)[0];
                residual = std::max(
                    residual, check_eigen(charge, ket, Complex(q, 0.0)).residual);
                break;
            }
            case 1: {  // total number on fixed-n SU(2) states
                const int n = rng.uniform_int(0, 10);
                const Ket ket = su2_fixed_spin(sample2.next(), n);
                residual = std::max(
                    residual,
                    check_eigen(number_total(ket.basis), ket, Complex(n, 0.0)).residual);
                break;
            }
            case 2: {  // total number on fixed-n SU(3) states
                const int n = rng.uniform_int(0, 8);
                const Ket ket = su3_fixed_n(sample3.next(), n);
                residual = std::max(
                    residual,
                    check_eigen(number_total(ket.basis), ket, Complex(n, 0.0)).residual);
                break;
            }
            default: {  // charge and hypercharge on the SU(3) ladder
                const int l = rng.uniform_int(0, 5);
                const int q = rng.uniform_int(-3, std::min(3, l));
                const int p_max = rng.uniform_int(2, 10);
                const auto basis = enumerate_sector(su3_charge_spec(q, l, p_max));
                const Ket ket = su3_charge_cs(sample3.next(), q, l, p_max);
                const auto cartan = sun_cartan_charges(basis);
                const auto hyper = cartan[0] + Complex(2.0, 0.0) * cartan[1];
                residual = std::max(
                    residual, check_eigen(cartan[0], ket, Complex(q, 0.0)).residual);
                residual = std::max(
                    residual, check_eigen(hyper, ket, Complex(2 * l - q, 0.0)).residual);
                break;
            }
        }
    }
    Params params{{"draws", fmt(draws)}, {"seed", std::to_string(seed)},
                  {"rng", kRngAlgorithm}};
    return make_report("eigen-relations", std::move(params), residual, 1e-12, timer.ms());
}

// SU(N) constructors must reproduce the SU(2)/SU(3) ones bit-for-bit (they
// share the amplitude path), so the tolerance is exactly zero.
CheckReport sun_consistency_sweep(int draws, std::uint64_t seed) {
    Timer timer;
    SplitMix64 rng(seed);
    SphereSampler sample2(2, rng.next());
    SphereSampler sample3(3, rng.next());
    double residual = 0.0;
    for (int t = 0; t < draws; ++t) {
        if (t % 2 == 0) {
            const int q = rng.uniform_int(0, 5);
            const int cutoff = rng.uniform_int(2, 12);
            const SpherePoint z = sample2.next();
            const Ket a = su2_charge_cs(z, q, cutoff);
            const Ket b = sun_charge_cs(z, {q}, cutoff);
            residual = std::max(residual, max_amp_diff(a.amps, b.amps));
        } else {
            const int l = rng.uniform_int(0, 4);
            const int q = rng.uniform_int(-3, std::min(3, l));
            const int cutoff = rng.uniform_int(2, 10);
            const SpherePoint z = sample3.next();
            const Ket a = su3_charge_cs(z, q, l, cutoff);
            const Ket b = sun_charge_cs(z, {q, l - q}, cutoff);
            residual = std::max(residual, max_amp_diff(a.amps, b.amps));
        }
    }
    Params params{{"draws", fmt(draws)}, {"seed", std::to_string(seed)}};
    return make_report("sun-charge-consistency", std::move(params), residual, 0.0, timer.ms());
}

CheckReport pair_annihilation_check(Complex zeta, int q, int cutoff) {
    Timer timer;
    const Ket ket = pair_cs_bhaumik(PlanePoint{zeta}, q, cutoff);
    const Ket lhs = apply(lower_all_modes(ket.basis), ket);
    const Eigen::VectorXcd rhs = zeta * ket.amps;
    double residual = 0.0;
    for (std::int64_t i = 0; i + 1 < ket.basis->dim(); ++i) {
        residual = std::max(residual, std::abs(lhs.amps[i] - rhs[i]));
    }
    Params params{{"q", fmt(q)}, {"cutoff", fmt(cutoff)},
                  {"zeta_re", fmt(zeta.real())}, {"zeta_im", fmt(zeta.imag())}};
    return make_report("pair-annihilation", std::move(params), residual, 1e-12, timer.ms());
}

CheckReport eriksson_footnote_check(int n) {
    Timer timer;
    const auto basis = enumerate_sector(fixed_total_spec(3, n));
    const auto j = eriksson_generators(basis).generators;
    const auto q = su3_generators(basis).generators;
    const Complex two(2.0, 0.0);
    double residual = 0.0;
    residual = std::max(residual, (j[0] - two * q[6]).max_abs());            //  J1 =  2 Q7
    residual = std::max(residual, (j[1] - (-two) * q[4]).max_abs());         //  J2 = -2 Q5
    residual = std::max(residual, (j[2] - two * q[1]).max_abs());            //  J3 =  2 Q2
    return make_report("eriksson-footnote", {{"n", fmt(n)}}, residual, 1e-12, timer.ms());
}

CheckReport reconstruction_check(const SpherePoint& z, int q, int terms) {
    Timer timer;
    const int n_max = std::abs(q) + 2 * (terms - 1);
    const FamilySpec top = SU2FixedNFamily{n_max};
    const QuadratureGrid grid = sufficient_grid(top);
    const Ket rebuilt = reconstruct_charge_from_fixed_n(z, q, terms, grid);
    const Ket direct = su2_charge_cs(z, q, terms - 1);
    const double residual = max_amp_diff(rebuilt.amps, direct.amps);
    Params params{{"q", fmt(q)}, {"terms", fmt(terms)}};
    return make_report("charge-reconstruction", std::move(params), residual, 1e-8, timer.ms());
}

CheckReport roi_mc_check(const FamilySpec& family, std::int64_t samples, std::uint64_t seed) {
    Timer timer;
    const McGram mc = roi_matrix_mc(family, samples, seed);
    const double expected = roi_constant(family);
    const double residual = std::abs(mc.diag_mean - expected);
    const double tolerance = 3.0 * mc.diag_std_error;
    Params params = family_params(family);
    params.emplace_back("samples", std::to_string(samples));
    params.emplace_back("seed", std::to_string(seed));
    params.emplace_back("rng", kRngAlgorithm);
    params.emplace_back("constant", fmt(expected));
    params.emplace_back("sigma", fmt(mc.diag_std_error));
    return make_report("roi-mc-" + family_name(family), std::move(params), residual, tolerance,
                       timer.ms());
}

}  // namespace

std::vector<CheckReport> default_suite(std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<CheckReport> reports;

    for (int n = 0; n <= 8; ++n) {
        auto r = check_lie_algebra(su2_generators(enumerate_sector(fixed_total_spec(2, n))));
        r.name = "lie-algebra-su2";
        r.params.emplace_back("n", std::to_string(n));
        reports.push_back(std::move(r));
    }
    for (int n = 0; n <= 5; ++n) {
        auto r = check_lie_algebra(su3_generators(enumerate_sector(fixed_total_spec(3, n))));
        r.name = "lie-algebra-su3";
        r.params.emplace_back("n", std::to_string(n));
        reports.push_back(std::move(r));
    }
    for (int n = 0; n <= 10; ++n) {
        reports.push_back(check_casimir(enumerate_sector(fixed_total_spec(2, n))));
    }

    for (int n = 0; n <= 10; ++n) {
        const FamilySpec family = SU2FixedNFamily{n};
        reports.push_back(check_roi(family, roi_constant(family)));
    }
    for (int n = 0; n <= 6; ++n) {
        const FamilySpec family = SU3FixedNFamily{n};
        reports.push_back(check_roi(family, roi_constant(family)));
    }
    for (int q : {0, 1, 2, 5}) {
        const FamilySpec family = SU2ChargeFamily{q, 12};
        reports.push_back(check_roi(family, roi_constant(family)));
    }
    {
        const std::pair<int, int> ql[] = {{0, 0}, {1, 1}, {1, 2}, {-1, 0}};
        for (const auto& [q, l] : ql) {
            const FamilySpec family = SU3ChargeFamily{q, l, 10};
            reports.push_back(check_roi(family, roi_constant(family)));
        }
    }
    reports.push_back(
        roi_mc_check(SUNChargeFamily{4, {1, 0, 1}, 8}, 1'000'000, rng.next()));

    reports.push_back(eigen_relation_sweep(50, rng.next()));

    {
        SphereSampler sample2(2, rng.next());
        for (int q : {0, 1, 3}) {
            reports.push_back(check_nonlinear_relation(sample2.next(), q, 10));
        }
    }

    const auto angles = default_angle_grid();
    for (int two_j : {1, 2, 3, 4, 6}) {
        reports.push_back(check_group_action(two_j, angles));
    }

    reports.push_back(check_overlap_kernels(100, rng.next()));
    {
        SphereSampler sample2(2, rng.next());
        reports.push_back(reconstruction_check(sample2.next(), 1, 4));
    }
    reports.push_back(sun_consistency_sweep(20, rng.next()));
    reports.push_back(pair_annihilation_check(Complex(0.8, -0.6), 2, 12));
    {
        auto r = check_lie_algebra(eriksson_generators(enumerate_sector(fixed_total_spec(3, 2))));
        r.name = "lie-algebra-eriksson";
        reports.push_back(std::move(r));
    }
    reports.push_back(eriksson_footnote_check(2));

    return reports;
}

}  // namespace scs

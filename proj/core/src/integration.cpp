#include "scs/integration.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace scs {

namespace {

using Complex = std::complex<double>;

// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration on P_n.
// Plenty accurate for the desk-scale orders used here (machine precision by
// the third or fourth sweep).
void gauss_legendre_01(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(order), 0.0);
    weights.assign(static_cast<std::size_t>(order), 0.0);
    for (int i = 0; i < order; ++i) {
        // Chebyshev-like initial guess on [-1, 1].
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(order - 1 - i)] = 0.5 * (x + 1.0);
        weights[static_cast<std::size_t>(order - 1 - i)] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

constexpr std::int64_t kGramBlock = 256;

// Worker threads for grid Gram accumulation. The block partition and the
// pairwise combination order are fixed, so any thread count produces the
// same bits.
int worker_count() {
    const char* env = std::getenv("SCS_THREADS");
    if (!env) return 1;
    const long n = std::strtol(env, nullptr, 10);
    return static_cast<int>(std::clamp(n, 1L, 64L));
}

// Combine adjacent partial sums in rounds (tree reduction over the fixed
// block partition).
Eigen::MatrixXcd combine_pairwise(std::vector<Eigen::MatrixXcd> partials, std::int64_t dim) {
    if (partials.empty()) return Eigen::MatrixXcd::Zero(dim, dim);
    while (partials.size() > 1) {
        std::vector<Eigen::MatrixXcd> next;
        next.reserve((partials.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < partials.size(); i += 2) {
            next.push_back(partials[i] + partials[i + 1]);
        }
        if (partials.size() % 2 == 1) next.push_back(partials.back());
        partials = std::move(next);
    }
    return partials.front();
}

// Serial-order rank-one updates for one node block.
Eigen::MatrixXcd gram_block(const CoherentFamily& states, const QuadratureGrid& grid,
                            std::int64_t begin, std::int64_t end) {
    const std::int64_t dim = states.basis()->dim();
    Eigen::MatrixXcd partial = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t k = begin; k < end; ++k) {
        const Ket ket = states.ket(grid.point(k));
        partial.noalias() += grid.weight(k) * ket.amps * ket.amps.adjoint();
    }
    return partial;
}

// Stream accumulator (Monte Carlo path): same block size and combination
// discipline, fed node by node.
class GramAccumulator {
public:
    explicit GramAccumulator(std::int64_t dim)
        : dim_(dim), block_(Eigen::MatrixXcd::Zero(dim, dim)), in_block_(0) {}

    void add(double weight, const Eigen::VectorXcd& ket) {
        block_.noalias() += weight * ket * ket.adjoint();
        if (++in_block_ == kGramBlock) flush();
    }

    Eigen::MatrixXcd finish() {
        if (in_block_ > 0) flush();
        return combine_pairwise(std::move(partials_), dim_);
    }

private:
    void flush() {
        partials_.push_back(block_);
        block_.setZero();
        in_block_ = 0;
    }

    std::int64_t dim_;
    Eigen::MatrixXcd block_;
    std::int64_t in_block_;
    std::vector<Eigen::MatrixXcd> partials_;
};

}  // namespace

QuadratureGrid::QuadratureGrid(int sphere_dim, std::vector<Complex> coords,
                               std::vector<double> weights, Exactness exactness)
    : sphere_dim_(sphere_dim),
      coords_(std::move(coords)),
      weights_(std::move(weights)),
      exactness_(exactness) {
    if (sphere_dim_ < 1) throw InvalidOrder("grid: sphere dimension must be >= 1");
    if (coords_.size() != weights_.size() * static_cast<std::size_t>(sphere_dim_)) {
        throw InvalidOrder("grid: coordinate/weight sizes disagree");
    }
}

double QuadratureGrid::total_weight() const {
    // Fixed-order pairwise sum, matching the Gram accumulation discipline.
    double sum = 0.0;
    for (double w : weights_) sum += w;
    return sum;
}

QuadratureGrid polar_grid(int sphere_dim, int radial_order, int phase_points) {
    if (sphere_dim < 2) throw InvalidOrder("polar_grid: sphere dimension must be >= 2");
    if (radial_order < 1) throw InvalidOrder("polar_grid: radial order must be >= 1");
    if (phase_points < 1) throw InvalidOrder("polar_grid: phase points must be >= 1");

    const int n = sphere_dim;
    std::vector<double> gl_nodes, gl_weights;
    gauss_legendre_01(radial_order, gl_nodes, gl_weights);

    // Radial part: iterated splitting of the simplex sum |z_i|^2 = 1.
    //   t[n-1] = 1 - x_0, t[n-2] = x_0 (1 - x_1), ..., t[0] = x_0 ... x_{n-2}
    // with Jacobian prod_j x_j^{n-2-j} and overall 1/2^n from r dr = dt/2.
    const int axes = n - 1;
    std::int64_t radial_count = 1;
    for (int j = 0; j < axes; ++j) radial_count *= radial_order;

    std::vector<double> radii;        // radial_count * n
    std::vector<double> radial_w;     // radial_count
    radii.reserve(static_cast<std::size_t>(radial_count) * n);
    radial_w.reserve(static_cast<std::size_t>(radial_count));

    std::vector<int> idx(static_cast<std::size_t>(axes), 0);
    const double half_pow = std::pow(0.5, n);
    for (std::int64_t count = 0; count < radial_count; ++count) {
        double weight = half_pow;
        double remaining = 1.0;
        std::vector<double> t(static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j < axes; ++j) {
            const double x = gl_nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            weight *= gl_weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            for (int k = 0; k < n - 2 - j; ++k) weight *= x;
            t[static_cast<std::size_t>(n - 1 - j)] = remaining * (1.0 - x);
            remaining *= x;
        }
        t[0] = remaining;
        for (int k = 0; k < n; ++k) radii.push_back(std::sqrt(t[static_cast<std::size_t>(k)]));
        radial_w.push_back(weight);
        for (int j = axes - 1; j >= 0; --j) {
            if (++idx[static_cast<std::size_t>(j)] < radial_order) break;
            idx[static_cast<std::size_t>(j)] = 0;
        }
    }

    // Phase part: n independent equispaced circles.
    std::vector<Complex> phases(static_cast<std::size_t>(phase_points));
    for (int m = 0; m < phase_points; ++m) {
        const double theta = 2.0 * M_PI * m / phase_points;
        phases[static_cast<std::size_t>(m)] = std::polar(1.0, theta);
    }
    double phase_weight = 1.0;
    for (int k = 0; k < n; ++k) phase_weight *= 2.0 * M_PI / phase_points;

    std::int64_t phase_count = 1;
    for (int k = 0; k < n; ++k) phase_count *= phase_points;

    std::vector<Complex> coords;
    std::vector<double> weights;
    coords.reserve(static_cast<std::size_t>(radial_count * phase_count) * n);
    weights.reserve(static_cast<std::size_t>(radial_count * phase_count));

    std::vector<int> pidx(static_cast<std::size_t>(n), 0);
    for (std::int64_t r = 0; r < radial_count; ++r) {
        const double* rr = radii.data() + r * n;
        std::fill(pidx.begin(), pidx.end(), 0);
        for (std::int64_t p = 0; p < phase_count; ++p) {
            for (int k = 0; k < n; ++k) {
                coords.push_back(rr[k] * phases[static_cast<std::size_t>(pidx[static_cast<std::size_t>(k)])]);
            }
            weights.push_back(radial_w[static_cast<std::size_t>(r)] * phase_weight);
            for (int k = n - 1; k >= 0; --k) {
                if (++pidx[static_cast<std::size_t>(k)] < phase_points) break;
                pidx[static_cast<std::size_t>(k)] = 0;
            }
        }
    }

    Exactness cert;
    cert.max_radial_degree = 2 * radial_order - 1 - (n - 2);
    cert.max_phase_frequency = phase_points - 1;
    return QuadratureGrid(n, std::move(coords), std::move(weights), cert);
}

int family_mode_count(const FamilySpec& family) {
    return std::visit(
        [](const auto& f) -> int {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, SU2FixedNFamily> || std::is_same_v<T, SU2ChargeFamily>) {
                return 2;
            } else if constexpr (std::is_same_v<T, SU3FixedNFamily> ||
                                 std::is_same_v<T, SU3ChargeFamily>) {
                return 3;
            } else {
                return f.modes;
            }
        },
        family);
}

bool family_is_charge(const FamilySpec& family) {
    return std::holds_alternative<SU2ChargeFamily>(family) ||
           std::holds_alternative<SU3ChargeFamily>(family) ||
           std::holds_alternative<SUNChargeFamily>(family);
}

BasisPtr family_basis(const FamilySpec& family) {
    return std::visit(
        [](const auto& f) -> BasisPtr {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, SU2FixedNFamily>) {
                return enumerate_sector(fixed_total_spec(2, f.n));
            } else if constexpr (std::is_same_v<T, SU2ChargeFamily>) {
                return enumerate_sector(su2_charge_spec(f.q, f.r_max));
            } else if constexpr (std::is_same_v<T, SU3FixedNFamily>) {
                return enumerate_sector(fixed_total_spec(3, f.n));
            } else if constexpr (std::is_same_v<T, SU3ChargeFamily>) {
                return enumerate_sector(su3_charge_spec(f.q, f.l, f.p_max));
            } else if constexpr (std::is_same_v<T, SUNFixedNFamily>) {
                return enumerate_sector(fixed_total_spec(f.modes, f.n));
            } else {
                return enumerate_sector(sun_charges_spec(f.modes, f.charges, f.cutoff));
            }
        },
        family);
}

CoherentFamily family_states(const FamilySpec& family) {
    const auto weight = family_is_charge(family) ? CoherentFamily::Weight::charge
                                                 : CoherentFamily::Weight::fixed_total;
    return CoherentFamily(family_basis(family), weight);
}

Exactness family_requirement(const FamilySpec& family) {
    const auto basis = family_basis(family);
    const int modes = basis->mode_count();
    int max_total = 0;
    std::vector<int> lo(static_cast<std::size_t>(modes), INT_MAX);
    std::vector<int> hi(static_cast<std::size_t>(modes), 0);
    for (const auto& occ : basis->states()) {
        max_total = std::max(max_total, total_occupation(occ));
        for (int i = 0; i < modes; ++i) {
            lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], occ[static_cast<std::size_t>(i)]);
            hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], occ[static_cast<std::size_t>(i)]);
        }
    }
    int max_freq = 0;
    for (int i = 0; i < modes; ++i) {
        max_freq = std::max(max_freq, hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]);
    }
    return Exactness{max_total, max_freq};
}

QuadratureGrid sufficient_grid(const FamilySpec& family) {
    const Exactness need = family_requirement(family);
    const int modes = family_mode_count(family);
    const int radial_order = std::max(1, (need.max_radial_degree + modes - 1 + 1) / 2);
    const int phase_points = need.max_phase_frequency + 1;
    return polar_grid(modes, radial_order, phase_points);
}

double roi_constant(const FamilySpec& family) {
    const int modes = family_mode_count(family);
    double c = std::pow(M_PI, modes);
    if (family_is_charge(family)) return c;
    int n = 0;
    if (const auto* f2 = std::get_if<SU2FixedNFamily>(&family)) n = f2->n;
    if (const auto* f3 = std::get_if<SU3FixedNFamily>(&family)) n = f3->n;
    if (const auto* fn = std::get_if<SUNFixedNFamily>(&family)) n = fn->n;
    // n! / (n + N - 1)!
    for (int k = 1; k < modes; ++k) c /= static_cast<double>(n + k);
    return c;
}

Eigen::MatrixXcd roi_matrix(const FamilySpec& family, const QuadratureGrid& grid) {
    if (grid.sphere_dim() != family_mode_count(family)) {
        throw ModeMismatch("roi_matrix: grid sphere dimension differs from the family modes");
    }
    if (!grid.exactness().covers(family_requirement(family))) {
        throw ExactnessInsufficient(
            "roi_matrix: grid certificate does not cover the family degree");
    }
    const CoherentFamily states = family_states(family);
    const std::int64_t blocks = (grid.size() + kGramBlock - 1) / kGramBlock;
    std::vector<Eigen::MatrixXcd> partials(static_cast<std::size_t>(blocks));
    auto run_block = [&](std::int64_t b) {
        const std::int64_t begin = b * kGramBlock;
        const std::int64_t end = std::min(grid.size(), begin + kGramBlock);
        partials[static_cast<std::size_t>(b)] = gram_block(states, grid, begin, end);
    };
    const int threads = std::min<std::int64_t>(worker_count(), blocks);
    if (threads <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::int64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
                    run_block(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return combine_pairwise(std::move(partials), states.basis()->dim());
}

double roi_residual(const Eigen::MatrixXcd& gram, double constant) {
    if (gram.rows() != gram.cols()) throw SectorMismatch("roi_residual: matrix not square");
    double worst = 0.0;
    for (std::int64_t i = 0; i < gram.rows(); ++i) {
        for (std::int64_t j = 0; j < gram.cols(); ++j) {
            const Complex expected = (i == j) ? Complex(constant, 0.0) : Complex(0.0, 0.0);
            worst = std::max(worst, std::abs(gram(i, j) - expected));
        }
    }
    return worst;
}

McGram roi_matrix_mc(const FamilySpec& family, std::int64_t count, std::uint64_t seed) {
    if (count < 1) throw InvalidOrder("roi_matrix_mc: need at least one sample");
    const int modes = family_mode_count(family);
    const CoherentFamily states = family_states(family);
    const std::int64_t dim = states.basis()->dim();

    // Total mass of the delta-constrained measure on S^{2N-1}.
    double volume = std::pow(M_PI, modes);
    for (int k = 2; k < modes; ++k) volume /= static_cast<double>(k);

    SphereSampler sampler(modes, seed);
    GramAccumulator acc(dim);
    const double w = volume / static_cast<double>(count);
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t k = 0; k < count; ++k) {
        const SpherePoint z = sampler.next();
        const Ket ket = states.ket(z.coords());
        acc.add(w, ket.amps);
        const double u = volume * ket.amps.squaredNorm() / static_cast<double>(dim);
        sum += u;
        sum_sq += u * u;
    }
    McGram out;
    out.gram = acc.finish();
    const double nd = static_cast<double>(count);
    out.diag_mean = sum / nd;
    const double variance = std::max(0.0, (sum_sq - sum * sum / nd) / (nd - 1.0));
    out.diag_std_error = std::sqrt(variance / nd);
    return out;
}

Rational beta_moment(const std::vector<int>& exponents) {
    if (exponents.empty()) throw InvalidSpec("beta_moment: empty exponent list");
    using boost::multiprecision::cpp_int;
    cpp_int numerator = 1;
    int total = 0;
    for (int a : exponents) {
        if (a < 0) throw InvalidSpec("beta_moment: exponents must be >= 0");
        for (int k = 2; k <= a; ++k) numerator *= k;
        total += a;
    }
    const int n = static_cast<int>(exponents.size());
    cpp_int denominator = cpp_int(1) << n;  // the 1/2^N from r dr = dt/2
    for (int k = 2; k <= total + n - 1; ++k) denominator *= k;
    return Rational(numerator, denominator);
}

SphereSampler::SphereSampler(int dim, std::uint64_t seed) : dim_(dim), rng_(seed) {
    if (dim < 1) throw InvalidSpec("SphereSampler: dimension must be >= 1");
}

SpherePoint SphereSampler::next() {
    Eigen::VectorXcd v(dim_);
    while (true) {
        for (int i = 0; i < dim_; ++i) {
            const auto [re, im] = rng_.normal_pair();
            v[i] = Complex(re, im);
        }
        const double norm = v.norm();
        if (norm > 1e-12) {
            v /= norm;
            return SpherePoint(std::move(v));
        }
    }
}

std::vector<SpherePoint> mc_sphere(int dim, std::int64_t count, std::uint64_t seed) {
    if (count < 1) throw InvalidSpec("mc_sphere: count must be >= 1");
    SphereSampler sampler(dim, seed);
    std::vector<SpherePoint> points;
    points.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) points.push_back(sampler.next());
    return points;
}

Ket reconstruct_charge_from_fixed_n(const SpherePoint& z, int q, int terms,
                                    const QuadratureGrid& grid) {
    if (z.dim() != 2) throw ModeMismatch("reconstruct: needs a 2-sphere point");
    if (grid.sphere_dim() != 2) throw ModeMismatch("reconstruct: needs a 2-sphere grid");
    if (terms < 0) throw InvalidSpec("reconstruct: terms must be >= 0");

    const auto basis = enumerate_sector(su2_charge_spec(q, std::max(0, terms - 1)));
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis->dim());
    if (terms == 0) return Ket{basis, std::move(amps)};

    const int n_max = std::abs(q) + 2 * (terms - 1);
    if (!grid.exactness().covers(Exactness{n_max, n_max})) {
        throw ExactnessInsufficient("reconstruct: grid does not cover the largest fixed-n term");
    }

    for (int r = 0; r < terms; ++r) {
        const int n = std::abs(q) + 2 * r;  // admissible total: n - q even, n >= |q|
        const CoherentFamily fixed(enumerate_sector(fixed_total_spec(2, n)),
                                   CoherentFamily::Weight::fixed_total);
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(fixed.basis()->dim());
        for (std::int64_t k = 0; k < grid.size(); ++k) {
            Eigen::VectorXcd wpt = grid.point(k);
            const SpherePoint w(std::move(wpt));
            const Complex kernel = overlap_su2_kernel(w, z, n, q);
            if (kernel == Complex(0.0, 0.0)) continue;
            acc += grid.weight(k) * kernel * fixed.ket(w.coords()).amps;
        }
        const double c_n = M_PI * M_PI / (n + 1.0);
        const OccupationState occ{(n + q) / 2, (n - q) / 2};
        const auto row = fixed.basis()->index_of(occ);
        amps[basis->index_of(occ).value()] = acc[*row] / c_n;
    }
    return Ket{basis, std::move(amps)};
}

}  // namespace scs

#ifndef SCS_INTEGRATION_HPP
#define SCS_INTEGRATION_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "scs/fock.hpp"
#include "scs/rng.hpp"
#include "scs/states.hpp"

namespace scs {

using Rational = boost::multiprecision::cpp_rational;

// What a grid integrates exactly (up to roundoff) under the measure
// prod_i d^2 z_i delta(sum |z_i|^2 - 1):
//   - radial monomials prod (|z_i|^2)^{a_i} with sum a_i <= max_radial_degree,
//   - phase factors prod z_i^{m_i} zbar_i^{m'_i} with |m_i - m'_i| <=
//     max_phase_frequency (larger frequencies alias on the equispaced
//     circles).
struct Exactness {
    int max_radial_degree = 0;
    int max_phase_frequency = 0;

    bool covers(const Exactness& required) const {
        return max_radial_degree >= required.max_radial_degree &&
               max_phase_frequency >= required.max_phase_frequency;
    }
};

// Weighted point set on S^{2N-1}. Node coordinates are stored flat
// (node-major) to keep large grids compact.
class QuadratureGrid {
public:
    QuadratureGrid(int sphere_dim, std::vector<std::complex<double>> coords,
                   std::vector<double> weights, Exactness exactness);

    int sphere_dim() const { return sphere_dim_; }
    std::int64_t size() const { return static_cast<std::int64_t>(weights_.size()); }
    const Exactness& exactness() const { return exactness_; }

    Eigen::Map<const Eigen::VectorXcd> point(std::int64_t i) const {
        return {coords_.data() + i * sphere_dim_, sphere_dim_};
    }
    double weight(std::int64_t i) const { return weights_[static_cast<std::size_t>(i)]; }
    double total_weight() const;

private:
    int sphere_dim_;
    std::vector<std::complex<double>> coords_;
    std::vector<double> weights_;
    Exactness exactness_;
};

// Product grid from the polar decomposition of the sphere measure:
// equispaced phase circles (exact below `phase_points` cycles) times
// Gauss-Legendre nodes in the iterated sin^2 simplex variables. Total weight
// is pi^N / (N-1)!.
QuadratureGrid polar_grid(int sphere_dim, int radial_order, int phase_points);

// Coherent-state family descriptors for resolution-of-identity runs.
struct SU2FixedNFamily {
    int n = 0;
};
struct SU2ChargeFamily {
    int q = 0;
    int r_max = 0;
};
struct SU3FixedNFamily {
    int n = 0;
};
struct SU3ChargeFamily {
    int q = 0;
    int l = 0;
    int p_max = 0;
};
struct SUNFixedNFamily {
    int modes = 2;
    int n = 0;
};
struct SUNChargeFamily {
    int modes = 2;
    std::vector<int> charges;
    int cutoff = 0;
};

using FamilySpec = std::variant<SU2FixedNFamily, SU2ChargeFamily, SU3FixedNFamily,
                                SU3ChargeFamily, SUNFixedNFamily, SUNChargeFamily>;

int family_mode_count(const FamilySpec& family);
bool family_is_charge(const FamilySpec& family);
BasisPtr family_basis(const FamilySpec& family);
CoherentFamily family_states(const FamilySpec& family);

// Exactness a grid must certify before roi_matrix accepts it for this family.
Exactness family_requirement(const FamilySpec& family);

// The minimal polar grid whose certificate covers the family.
QuadratureGrid sufficient_grid(const FamilySpec& family);

// Expected constant c with G = c * I under our measure: pi^N n!/(n+N-1)! for
// fixed-n families, pi^N for every charge family.
double roi_constant(const FamilySpec& family);

// Gram matrix G = sum_k w_k |z_k><z_k| over the family's sector basis.
// Accumulation runs over a fixed node order with pairwise block summation,
// so the result is reproducible to the last bit. Throws
// ExactnessInsufficient when the grid certificate does not cover the
// family's degree.
Eigen::MatrixXcd roi_matrix(const FamilySpec& family, const QuadratureGrid& grid);

// Max-abs entry of G - c I.
double roi_residual(const Eigen::MatrixXcd& gram, double constant);

// Monte Carlo Gram estimate from `count` uniform sphere samples, plus the
// sample mean and standard error of the diagonal average (the scalar used
// for sigma-based acceptance of the estimate).
struct McGram {
    Eigen::MatrixXcd gram;
    double diag_mean = 0.0;
    double diag_std_error = 0.0;
};
McGram roi_matrix_mc(const FamilySpec& family, std::int64_t count, std::uint64_t seed);

// Exact sphere moment: integral of prod (|z_i|^2)^{a_i} equals
// (1/2^N) * prod a_i! / (sum a_i + N - 1)! as a rational number.
Rational beta_moment(const std::vector<int>& exponents);

// Stream of uniform points on S^{2N-1}: normalized complex Gaussian vectors
// driven by splitmix64 + Box-Muller; deterministic for a fixed seed.
class SphereSampler {
public:
    SphereSampler(int dim, std::uint64_t seed);
    SpherePoint next();

private:
    int dim_;
    SplitMix64 rng_;
};

std::vector<SpherePoint> mc_sphere(int dim, std::int64_t count, std::uint64_t seed);

// Rebuilds the SU(2) charge state at `z` from fixed-n coherent states: the
// kernel-weighted quadrature sum over the first `terms` admissible n values
// (n = |q| + 2r), each normalized by the fixed-n identity constant.
Ket reconstruct_charge_from_fixed_n(const SpherePoint& z, int q, int terms,
                                    const QuadratureGrid& grid);

}  // namespace scs

#endif

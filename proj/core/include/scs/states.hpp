#ifndef SCS_STATES_HPP
#define SCS_STATES_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "scs/fock.hpp"
#include "scs/ket.hpp"
#include "scs/operators.hpp"

namespace scs {

// Point on the unit sphere S^{2N-1}: complex coordinates with
// sum_i |z_i|^2 = 1 (tolerance 1e-12).
class SpherePoint {
public:
    explicit SpherePoint(Eigen::VectorXcd coords);

    int dim() const { return static_cast<int>(coords_.size()); }
    const Eigen::VectorXcd& coords() const { return coords_; }
    std::complex<double> operator[](int i) const { return coords_[i]; }

private:
    Eigen::VectorXcd coords_;
};

struct EulerAngles {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;
    double psi = 0.0;
};

// Coordinate on the complex plane (comparison families).
struct PlanePoint {
    std::complex<double> zeta;
};

// Shared amplitude path for the monomial coherent-state families:
// amp_s(z) = c_s * prod_i z_i^{n_si}, with the per-state weight c_s
// precomputed in log space (lgamma differences) so factorial ratios stay
// representable long after the raw factorials overflow.
//
//   fixed_total: c_s = sqrt(T_s! / prod n_si!)          (T_s = total count)
//   charge     : c_s = sqrt((T_s + N - 1)! / prod n_si!)
//   canonical  : c_s = 1 / sqrt(n!)                     (single mode)
//
// Every family constructor funnels through this class, which is what makes
// the SU(N) constructors reproduce the SU(2)/SU(3) ones bit-for-bit.
class CoherentFamily {
public:
    enum class Weight { fixed_total, charge, canonical };

    CoherentFamily(BasisPtr basis, Weight weight);

    const BasisPtr& basis() const { return basis_; }
    // 0^0 = 1 convention for zero coordinates at zero exponent.
    Ket ket(const Eigen::VectorXcd& coords) const;

private:
    BasisPtr basis_;
    std::vector<double> coeff_;
};

// Canonical (harmonic-oscillator) coherent state, truncated and unnormalized:
// amplitudes z^n / sqrt(n!) for n <= cutoff.
Ket canonical_cs(std::complex<double> z, int cutoff);

// Fixed total-number families on S^{2N-1}; unit norm for any sphere point.
Ket su2_fixed_spin(const SpherePoint& z, int n);
Ket su3_fixed_n(const SpherePoint& z, int n);
Ket sun_fixed_n(const SpherePoint& z, int n);

// Fixed-charge ladder families (unnormalized by construction; the
// resolution-of-identity weights require the bare amplitudes).
Ket su2_charge_cs(const SpherePoint& z, int q, int r_max);
Ket su3_charge_cs(const SpherePoint& z, int q, int l, int p_max);
Ket sun_charge_cs(const SpherePoint& z, const std::vector<int>& charges, int cutoff);

// Ratio of consecutive squared ladder amplitudes at the truncation edge. A
// value >= 1 means the dropped tail does not converge at this sphere point
// (|z_1 z_2| -> 1/2 for SU(2)); the truncated ket is then a poor stand-in
// for the infinite ladder.
double charge_tail_ratio(const SpherePoint& z, const SectorBasis& basis);
double su2_charge_tail_ratio(const SpherePoint& z, int q, int r_max);

// Closed-form overlap of a fixed-n state <w| with a charge state |z>_q.
// Exactly zero unless n = 2p + q with integer p >= 0.
std::complex<double> overlap_su2_kernel(const SpherePoint& w, const SpherePoint& z, int n, int q);
// SU(3) analogue; nonzero only when n = 3p + 2l - q.
std::complex<double> overlap_su3_kernel(const SpherePoint& w, const SpherePoint& z, int n, int q,
                                        int l);

// z1 = e^{i psi/2} e^{i phi/2} cos(theta/2), z2 = e^{i psi/2} e^{-i phi/2}
// sin(theta/2); unit norm by construction.
SpherePoint euler_to_sphere(const EulerAngles& angles);

// Highest-weight state rotated by the group element, evaluated through the
// closed-form coefficients e^{i j psi} C_m(theta, phi). The verify module
// checks this against the matrix-exponential chain.
Ket group_action_su2(const EulerAngles& angles, int two_j);

// Pair (two-mode) coherent states on the plane: eigenstates of a1 a2 with
// normalization from the convergent series (relative tail below 1e-14).
Ket pair_cs_bhaumik(const PlanePoint& zeta, int q, int cutoff);

// Three-mode plane-coherent comparison family |m+y+qbar, m+2y-qbar, m>.
Ket fan_su3_cs(const PlanePoint& zeta, int qbar, int y, int cutoff);

// Three-oscillator su(2) realization J^i = -i eps^{ijk} a_j^dagger a_k.
GeneratorSet eriksson_generators(BasisPtr basis);

// Conjugate-linear in the first argument. Throws SectorMismatch when the
// sector specs differ; use fock_inner across different sectors.
std::complex<double> inner(const Ket& x, const Ket& y);
double norm2(const Ket& x);
// Inner product in the ambient Fock space: sums over occupation states the
// two bases share.
std::complex<double> fock_inner(const Ket& x, const Ket& y);
std::complex<double> expectation(const SparseOperator& op, const Ket& x);

}  // namespace scs

#endif

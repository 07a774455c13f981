#include "scs/states.hpp"

#include <cmath>

namespace scs {

namespace {

using Complex = std::complex<double>;

Complex ipow(Complex z, int n) {
    Complex result(1.0, 0.0);
    for (int k = 0; k < n; ++k) result *= z;
    return result;
}

// 0.5 * (lgamma(num_arg) - sum_i lgamma(n_i + 1)); num_arg picks the family.
double half_log_weight(double num_arg, const OccupationState& occ) {
    double value = std::lgamma(num_arg);
    for (int n : occ) value -= std::lgamma(static_cast<double>(n) + 1.0);
    return 0.5 * value;
}

double weight_numerator_arg(CoherentFamily::Weight weight, const OccupationState& occ) {
    switch (weight) {
        case CoherentFamily::Weight::fixed_total:
            return static_cast<double>(total_occupation(occ)) + 1.0;
        case CoherentFamily::Weight::charge:
            return static_cast<double>(total_occupation(occ) + static_cast<int>(occ.size()));
        case CoherentFamily::Weight::canonical:
            return 1.0;
    }
    return 1.0;
}

void check_finite(const Eigen::VectorXcd& amps) {
    for (std::int64_t i = 0; i < amps.size(); ++i) {
        if (!std::isfinite(amps[i].real()) || !std::isfinite(amps[i].imag())) {
            throw Error("ket amplitude overflowed to non-finite value");
        }
    }
}

// Normalization 1/sqrt(S) of a plane-coherent series S = sum_m t_m with
// t_{m+1} = t_m * step(m); truncates once the geometric tail bound drops
// below 1e-14 relative.
template <typename StepRatio>
double plane_series_norm(double first_term, StepRatio step) {
    double sum = 0.0;
    double term = first_term;
    for (int m = 0;; ++m) {
        sum += term;
        const double r = step(m);
        term *= r;
        if (r < 0.5 && term / (1.0 - r) <= 1e-14 * sum) {
            sum += term / (1.0 - r);  // bound the rest by the geometric tail
            break;
        }
        if (m > 100000) throw Error("plane-coherent normalization did not converge");
    }
    return 1.0 / std::sqrt(sum);
}

}  // namespace

SpherePoint::SpherePoint(Eigen::VectorXcd coords) : coords_(std::move(coords)) {
    if (coords_.size() < 1) throw InvalidSpec("SpherePoint: needs at least one coordinate");
    if (std::abs(coords_.squaredNorm() - 1.0) > 1e-12) {
        throw InvalidSpec("SpherePoint: coordinates are not on the unit sphere");
    }
}

CoherentFamily::CoherentFamily(BasisPtr basis, Weight weight) : basis_(std::move(basis)) {
    coeff_.reserve(static_cast<std::size_t>(basis_->dim()));
    for (const auto& occ : basis_->states()) {
        coeff_.push_back(std::exp(half_log_weight(weight_numerator_arg(weight, occ), occ)));
    }
}

Ket CoherentFamily::ket(const Eigen::VectorXcd& coords) const {
    if (coords.size() != basis_->mode_count()) {
        throw ModeMismatch("coherent family: coordinate count differs from mode count");
    }
    Eigen::VectorXcd amps(basis_->dim());
    for (std::int64_t s = 0; s < basis_->dim(); ++s) {
        const OccupationState& occ = basis_->state(s);
        Complex a(coeff_[static_cast<std::size_t>(s)], 0.0);
        for (int i = 0; i < basis_->mode_count(); ++i) {
            a *= ipow(coords[i], occ[static_cast<std::size_t>(i)]);
        }
        amps[s] = a;
    }
    check_finite(amps);
    return Ket{basis_, std::move(amps)};
}

Ket canonical_cs(Complex z, int cutoff) {
    CoherentFamily family(enumerate_sector(plain_truncation_spec(1, cutoff)),
                          CoherentFamily::Weight::canonical);
    Eigen::VectorXcd coords(1);
    coords[0] = z;
    return family.ket(coords);
}

Ket su2_fixed_spin(const SpherePoint& z, int n) {
    if (z.dim() != 2) throw ModeMismatch("su2_fixed_spin: needs a 2-sphere point");
    CoherentFamily family(enumerate_sector(fixed_total_spec(2, n)),
                          CoherentFamily::Weight::fixed_total);
    return family.ket(z.coords());
}

Ket su3_fixed_n(const SpherePoint& z, int n) {
    if (z.dim() != 3) throw ModeMismatch("su3_fixed_n: needs a 3-sphere point");
    CoherentFamily family(enumerate_sector(fixed_total_spec(3, n)),
                          CoherentFamily::Weight::fixed_total);
    return family.ket(z.coords());
}

Ket sun_fixed_n(const SpherePoint& z, int n) {
    if (z.dim() < 2) throw ModeMismatch("sun_fixed_n: needs at least 2 modes");
    CoherentFamily family(enumerate_sector(fixed_total_spec(z.dim(), n)),
                          CoherentFamily::Weight::fixed_total);
    return family.ket(z.coords());
}

Ket su2_charge_cs(const SpherePoint& z, int q, int r_max) {
    if (z.dim() != 2) throw ModeMismatch("su2_charge_cs: needs a 2-sphere point");
    CoherentFamily family(enumerate_sector(su2_charge_spec(q, r_max)),
                          CoherentFamily::Weight::charge);
    return family.ket(z.coords());
}

Ket su3_charge_cs(const SpherePoint& z, int q, int l, int p_max) {
    if (z.dim() != 3) throw ModeMismatch("su3_charge_cs: needs a 3-sphere point");
    CoherentFamily family(enumerate_sector(su3_charge_spec(q, l, p_max)),
                          CoherentFamily::Weight::charge);
    return family.ket(z.coords());
}

Ket sun_charge_cs(const SpherePoint& z, const std::vector<int>& charges, int cutoff) {
    CoherentFamily family(enumerate_sector(sun_charges_spec(z.dim(), charges, cutoff)),
                          CoherentFamily::Weight::charge);
    return family.ket(z.coords());
}

double charge_tail_ratio(const SpherePoint& z, const SectorBasis& basis) {
    if (z.dim() != basis.mode_count()) {
        throw ModeMismatch("charge_tail_ratio: coordinate count differs from mode count");
    }
    const OccupationState& last = basis.state(basis.dim() - 1);
    OccupationState next = last;
    for (auto& n : next) ++n;  // one more ladder rung
    const double charge_arg_last =
        weight_numerator_arg(CoherentFamily::Weight::charge, last);
    const double charge_arg_next =
        weight_numerator_arg(CoherentFamily::Weight::charge, next);
    double log_ratio =
        2.0 * (half_log_weight(charge_arg_next, next) - half_log_weight(charge_arg_last, last));
    double moduli = 1.0;
    for (int i = 0; i < z.dim(); ++i) moduli *= std::norm(z[i]);
    return std::exp(log_ratio) * moduli;
}

double su2_charge_tail_ratio(const SpherePoint& z, int q, int r_max) {
    return charge_tail_ratio(z, *enumerate_sector(su2_charge_spec(q, r_max)));
}

std::complex<double> overlap_su2_kernel(const SpherePoint& w, const SpherePoint& z, int n,
                                        int q) {
    if (w.dim() != 2 || z.dim() != 2) {
        throw ModeMismatch("overlap_su2_kernel: needs 2-sphere points");
    }
    if (n < 0) throw InvalidSpec("overlap_su2_kernel: n must be >= 0");
    // Selection rule n = 2p + q: both (n - q)/2 and (n + q)/2 must be
    // non-negative integers.
    if ((n - q) % 2 != 0 || n < std::abs(q)) return Complex(0.0, 0.0);
    const int p = (n - q) / 2;
    const int pq = (n + q) / 2;
    const double log_coeff = 0.5 * (std::lgamma(n + 1.0) + std::lgamma(n + 2.0)) -
                             std::lgamma(pq + 1.0) - std::lgamma(p + 1.0);
    return std::exp(log_coeff) * ipow(std::conj(w[0]) * z[0], pq) *
           ipow(std::conj(w[1]) * z[1], p);
}

std::complex<double> overlap_su3_kernel(const SpherePoint& w, const SpherePoint& z, int n, int q,
                                        int l) {
    if (w.dim() != 3 || z.dim() != 3) {
        throw ModeMismatch("overlap_su3_kernel: needs 3-sphere points");
    }
    if (n < 0) throw InvalidSpec("overlap_su3_kernel: n must be >= 0");
    if (l < std::max(0, q)) throw InvalidSpec("overlap_su3_kernel: l must be >= max(0, q)");
    // Selection rule n = 3p + 2l - q.
    const int rem = n - (2 * l - q);
    if (rem < 0 || rem % 3 != 0) return Complex(0.0, 0.0);
    const int p = rem / 3;
    const double log_coeff = 0.5 * (std::lgamma(n + 1.0) + std::lgamma(n + 3.0)) -
                             std::lgamma(p + l + 1.0) - std::lgamma(p + l - q + 1.0) -
                             std::lgamma(p + 1.0);
    return std::exp(log_coeff) * ipow(std::conj(w[0]) * z[0], p + l) *
           ipow(std::conj(w[1]) * z[1], p + l - q) * ipow(std::conj(w[2]) * z[2], p);
}

SpherePoint euler_to_sphere(const EulerAngles& angles) {
    if (angles.theta < 0.0 || angles.theta > M_PI + 1e-12) {
        throw InvalidSpec("euler_to_sphere: theta must lie in [0, pi]");
    }
    const Complex common = std::exp(Complex(0.0, 0.5 * angles.psi));
    Eigen::VectorXcd coords(2);
    coords[0] = common * std::exp(Complex(0.0, 0.5 * angles.phi)) * std::cos(0.5 * angles.theta);
    coords[1] = common * std::exp(Complex(0.0, -0.5 * angles.phi)) * std::sin(0.5 * angles.theta);
    return SpherePoint(std::move(coords));
}

Ket group_action_su2(const EulerAngles& angles, int two_j) {
    if (two_j < 0) throw InvalidSpec("group_action_su2: 2j must be >= 0");
    if (angles.theta < 0.0 || angles.theta > M_PI + 1e-12) {
        throw InvalidSpec("group_action_su2: theta must lie in [0, pi]");
    }
    const auto basis = enumerate_sector(fixed_total_spec(2, two_j));
    Eigen::VectorXcd amps(basis->dim());
    const double c = std::cos(0.5 * angles.theta);
    const double s = std::sin(0.5 * angles.theta);
    // State |j; m> = |j+m, j-m>; loop over k = j + m = 0..2j.
    for (int k = 0; k <= two_j; ++k) {
        const double log_coeff = 0.5 * (std::lgamma(two_j + 1.0) - std::lgamma(k + 1.0) -
                                        std::lgamma(two_j - k + 1.0));
        // j*psi + m*phi with j = two_j/2, m = k - j.
        const double phase = 0.5 * (two_j * angles.psi + (2 * k - two_j) * angles.phi);
        const Complex amp = std::exp(Complex(0.0, phase)) *
                            std::exp(log_coeff) * std::pow(c, k) * std::pow(s, two_j - k);
        const auto idx = basis->index_of(OccupationState{k, two_j - k});
        amps[*idx] = amp;
    }
    return Ket{basis, std::move(amps)};
}

Ket pair_cs_bhaumik(const PlanePoint& zeta, int q, int cutoff) {
    if (q < 0) throw InvalidSpec("pair_cs_bhaumik: q must be >= 0");
    if (cutoff < 0) throw InvalidSpec("pair_cs_bhaumik: cutoff must be >= 0");
    const auto basis = enumerate_sector(su2_charge_spec(q, cutoff));
    const double z2 = std::norm(zeta.zeta);
    const double norm = plane_series_norm(
        std::exp(-std::lgamma(q + 1.0)),
        [&](int m) { return z2 / ((m + 1.0) * (m + q + 1.0)); });
    Eigen::VectorXcd amps(basis->dim());
    for (int m = 0; m <= cutoff; ++m) {
        const double log_coeff = -0.5 * (std::lgamma(m + 1.0) + std::lgamma(m + q + 1.0));
        amps[m] = norm * ipow(zeta.zeta, m) * std::exp(log_coeff);
    }
    check_finite(amps);
    return Ket{basis, std::move(amps)};
}

Ket fan_su3_cs(const PlanePoint& zeta, int qbar, int y, int cutoff) {
    const int e1 = y + qbar;      // mode-1 occupation at m = 0
    const int e2 = 2 * y - qbar;  // mode-2 occupation at m = 0
    if (e1 < 0 || e2 < 0) {
        throw InvalidSpec("fan_su3_cs: occupations must be non-negative at m=0");
    }
    if (cutoff < 0) throw InvalidSpec("fan_su3_cs: cutoff must be >= 0");
    // Same ladder as the fixed (q, l) sector with q = 2*qbar - y, l = qbar + y.
    const auto basis = enumerate_sector(su3_charge_spec(2 * qbar - y, qbar + y, cutoff));
    const double z2 = std::norm(zeta.zeta);
    const double norm = plane_series_norm(
        std::exp(-(std::lgamma(e1 + 1.0) + std::lgamma(e2 + 1.0))),
        [&](int m) { return z2 / ((m + 1.0) * (m + e1 + 1.0) * (m + e2 + 1.0)); });
    Eigen::VectorXcd amps(basis->dim());
    for (int m = 0; m <= cutoff; ++m) {
        const double log_coeff = -0.5 * (std::lgamma(m + 1.0) + std::lgamma(m + e1 + 1.0) +
                                         std::lgamma(m + e2 + 1.0));
        amps[m] = norm * ipow(zeta.zeta, m) * std::exp(log_coeff);
    }
    check_finite(amps);
    return Ket{basis, std::move(amps)};
}

GeneratorSet eriksson_generators(BasisPtr basis) {
    if (basis->mode_count() != 3) {
        throw ModeMismatch("eriksson_generators: basis must have 3 modes");
    }
    const Complex mi(0.0, -1.0);
    auto pair_rot = [&](int j, int k) {
        return mi * (quadratic(basis, j, k) - quadratic(basis, k, j));
    };
    std::vector<SparseOperator> gens;
    gens.push_back(pair_rot(1, 2));
    gens.push_back(pair_rot(2, 0));
    gens.push_back(pair_rot(0, 1));
    return GeneratorSet{GroupLabel::su2, std::move(gens),
                        structure_constants_from_fundamental(GroupLabel::su2)};
}

std::complex<double> inner(const Ket& x, const Ket& y) {
    if (!(x.basis->spec() == y.basis->spec())) {
        throw SectorMismatch("inner: kets live on different sectors");
    }
    return x.amps.dot(y.amps);
}

double norm2(const Ket& x) {
    return x.amps.squaredNorm();
}

std::complex<double> fock_inner(const Ket& x, const Ket& y) {
    if (x.basis->mode_count() != y.basis->mode_count()) {
        throw ModeMismatch("fock_inner: kets have different mode counts");
    }
    if (x.basis->spec() == y.basis->spec()) return inner(x, y);
    Complex acc(0.0, 0.0);
    for (std::int64_t i = 0; i < x.basis->dim(); ++i) {
        if (const auto j = y.basis->index_of(x.basis->state(i))) {
            acc += std::conj(x.amps[i]) * y.amps[*j];
        }
    }
    return acc;
}

std::complex<double> expectation(const SparseOperator& op, const Ket& x) {
    return inner(x, apply(op, x));
}

}  // namespace scs

#ifndef SCS_VERIFY_HPP
#define SCS_VERIFY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scs/integration.hpp"
#include "scs/operators.hpp"
#include "scs/states.hpp"

namespace scs {

// One machine-checkable identity with its worst-case residual. Identities
// here are exact in exact arithmetic, so residuals are max-norms rather than
// averages, and `passed` is residual <= tolerance by construction.
struct CheckReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;  // insertion order kept
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double runtime_ms = 0.0;
};

CheckReport make_report(std::string name,
                        std::vector<std::pair<std::string, std::string>> params, double residual,
                        double tolerance, double runtime_ms);

// max_{a,b} || [T^a, T^b] - i sum_c f^{abc} T^c ||_max; tolerance 1e-12.
CheckReport check_lie_algebra(const GeneratorSet& gens);

// || sum_a (J^a)^2 - C(C+2)/4 ||_max on a two-mode sector; tolerance 1e-12.
CheckReport check_casimir(BasisPtr basis);

// || op ket - lambda ket || / max(1, ||ket||); tolerance 1e-12 for diagonal
// operators, 1e-10 otherwise.
CheckReport check_eigen(const SparseOperator& op, const Ket& ket, std::complex<double> lambda);

// f(C) a1 a2 |z>_q versus z1 z2 |z>_q with f(C) = 1/sqrt((C+3)(C+2)),
// compared on the rungs below the truncation edge; tolerance 1e-12.
CheckReport check_nonlinear_relation(const SpherePoint& z, int q, int r_max);

// Rotated highest-weight state: closed-form coefficients against the
// exp(i phi J3) exp(-i theta J2) exp(i psi J3) matrix chain; tolerance 1e-10.
CheckReport check_group_action(int two_j, std::span<const EulerAngles> angles);

// Builds the minimal sufficient grid and compares the Gram matrix against
// expected_constant * I; tolerance 1e-10 for fixed-n families, 1e-8 for
// charge families.
CheckReport check_roi(const FamilySpec& family, double expected_constant);

// Closed-form overlap kernels against numerically summed inner products over
// random sphere points and admissible quantum numbers, plus exact zeros off
// the selection rules; tolerance 1e-10.
CheckReport check_overlap_kernels(int trials, std::uint64_t seed);

// The 27-point Euler grid used by default group-action checks.
std::vector<EulerAngles> default_angle_grid();

// The library's regression gate: every check above at default parameters.
std::vector<CheckReport> default_suite(std::uint64_t seed);

}  // namespace scs

#endif

#ifndef SCS_OPERATORS_HPP
#define SCS_OPERATORS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "scs/fock.hpp"
#include "scs/ket.hpp"

namespace scs {

struct Triplet {
    std::int64_t row = 0;
    std::int64_t col = 0;
    std::complex<double> value;
};

// Complex sparse matrix mapping one sector basis to another, stored as
// coordinate triplets canonicalized by (row, col) sort with summed
// duplicates. Immutable after construction.
class SparseOperator {
public:
    SparseOperator(BasisPtr domain, BasisPtr codomain, std::vector<Triplet> entries);

    static SparseOperator identity(BasisPtr basis);
    static SparseOperator zero(BasisPtr domain, BasisPtr codomain);
    // Diagonal operator from per-state values on `basis`.
    static SparseOperator diagonal(BasisPtr basis, const Eigen::VectorXcd& values);

    const BasisPtr& domain() const { return domain_; }
    const BasisPtr& codomain() const { return codomain_; }
    std::int64_t rows() const { return codomain_->dim(); }
    std::int64_t cols() const { return domain_->dim(); }
    const std::vector<Triplet>& entries() const { return entries_; }

    SparseOperator adjoint() const;
    bool is_diagonal() const;
    bool is_hermitian(double tol = 1e-12) const;
    double max_abs() const;
    Eigen::MatrixXcd dense() const;

    friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
    // Composition: (a * b) x = a (b x).
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator*(std::complex<double> s, const SparseOperator& a);

private:
    BasisPtr domain_;
    BasisPtr codomain_;
    std::vector<Triplet> entries_;
};

enum class LadderKind { raise_mode, lower_mode };

// Single-mode ladder operator a_mode^(dagger). Matrix elements follow the
// sqrt(n) rule; image states not representable in the codomain are dropped
// (truncation boundary), so assertions near a cutoff must stay interior.
SparseOperator ladder(int mode, LadderKind kind, BasisPtr domain, BasisPtr codomain);

// Number-conserving bilinear a_create^dagger a_annihilate on one sector.
SparseOperator quadratic(BasisPtr basis, int create_mode, int annihilate_mode);

SparseOperator number_mode(BasisPtr basis, int mode);

// Product a_1 a_2 ... a_N lowering every mode once. Maps a charge ladder one
// rung down, so it is an endomorphism of every fixed-charge sector.
SparseOperator lower_all_modes(BasisPtr basis);

// Total occupation operator; equals n * identity on a FixedTotal(n) sector.
SparseOperator number_total(BasisPtr basis);

enum class GroupLabel { su2, su3, sun };

// Totally antisymmetric structure constants f^{abc}, indexed a,b,c in
// [0, dim).
class StructureConstants {
public:
    StructureConstants(int dim, std::vector<double> values);

    int dim() const { return dim_; }
    double operator()(int a, int b, int c) const {
        return values_[static_cast<std::size_t>((a * dim_ + b) * dim_ + c)];
    }
    // Largest |f^{abc} + f^{bac}| and permutation analogues; zero for an
    // exactly antisymmetric tensor.
    double max_antisymmetry_violation() const;

private:
    int dim_;
    std::vector<double> values_;
};

struct GeneratorSet {
    GroupLabel label;
    std::vector<SparseOperator> generators;
    StructureConstants f;
};

// f^{abc} = -2i tr([T^a, T^b] T^c) with T = sigma/2 (SU(2)) or lambda/2
// (SU(3)), normalized by tr(T^a T^b) = delta^{ab}/2.
StructureConstants structure_constants_from_fundamental(GroupLabel group);

// J^a = a_i^dagger (sigma^a)_ij a_j / 2 on a two-mode sector.
GeneratorSet su2_generators(BasisPtr basis);

// The eight bilinears Q^a = a_i^dagger (lambda^a)_ij a_j / 2 on a three-mode
// sector.
GeneratorSet su3_generators(BasisPtr basis);

// Cartan charges Q_l = N_l - N_{l+1}, l = 1..N-1; diagonal and mutually
// commuting.
std::vector<SparseOperator> sun_cartan_charges(BasisPtr basis);

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

// exp(i t H) for Hermitian H via dense eigendecomposition. Throws
// NotHermitian (tolerance 1e-12) or DimensionTooLarge (dim > 2000).
Eigen::MatrixXcd hermitian_expm(const SparseOperator& h, double t);

Ket apply(const SparseOperator& op, const Ket& ket);

}  // namespace scs

#endif

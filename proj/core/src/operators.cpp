#include "scs/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

namespace scs {

namespace {

using Complex = std::complex<double>;

bool same_sector(const SectorBasis& a, const SectorBasis& b) {
    return a.spec() == b.spec();
}

void require_endomorphism(const SparseOperator& op, const char* what) {
    if (!same_sector(*op.domain(), *op.codomain())) {
        throw SectorMismatch(std::string(what) + ": operator is not an endomorphism");
    }
}

std::vector<Triplet> canonicalize(std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triplet> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        if (!out.empty() && out.back().row == e.row && out.back().col == e.col) {
            out.back().value += e.value;
        } else {
            out.push_back(e);
        }
    }
    std::erase_if(out, [](const Triplet& e) { return e.value == Complex(0.0, 0.0); });
    return out;
}

// Fundamental representations used for the trace formula. Pauli matrices and
// the standard Gell-Mann basis.
std::vector<Eigen::MatrixXcd> fundamental_matrices(GroupLabel group) {
    const Complex i(0.0, 1.0);
    if (group == GroupLabel::su2) {
        Eigen::MatrixXcd s1(2, 2), s2(2, 2), s3(2, 2);
        s1 << 0, 1, 1, 0;
        s2 << 0, -i, i, 0;
        s3 << 1, 0, 0, -1;
        return {s1, s2, s3};
    }
    if (group != GroupLabel::su3) {
        throw InvalidSpec("structure constants are computed for SU(2) or SU(3) only");
    }
    const double r3 = 1.0 / std::sqrt(3.0);
    std::vector<Eigen::MatrixXcd> lambda(8, Eigen::MatrixXcd::Zero(3, 3));
    lambda[0] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
    lambda[1] << 0, -i, 0, i, 0, 0, 0, 0, 0;
    lambda[2] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
    lambda[3] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
    lambda[4] << 0, 0, -i, 0, 0, 0, i, 0, 0;
    lambda[5] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
    lambda[6] << 0, 0, 0, 0, 0, -i, 0, i, 0;
    lambda[7] << r3, 0, 0, 0, r3, 0, 0, 0, -2.0 * r3;
    return lambda;
}

}  // namespace

SparseOperator::SparseOperator(BasisPtr domain, BasisPtr codomain, std::vector<Triplet> entries)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      entries_(canonicalize(std::move(entries))) {
    for (const auto& e : entries_) {
        if (e.row < 0 || e.row >= rows() || e.col < 0 || e.col >= cols()) {
            throw SectorMismatch("sparse entry outside basis dimensions");
        }
    }
}

SparseOperator SparseOperator::identity(BasisPtr basis) {
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(basis->dim()));
    for (std::int64_t i = 0; i < basis->dim(); ++i) {
        entries.push_back({i, i, Complex(1.0, 0.0)});
    }
    return SparseOperator(basis, basis, std::move(entries));
}

SparseOperator SparseOperator::zero(BasisPtr domain, BasisPtr codomain) {
    return SparseOperator(std::move(domain), std::move(codomain), {});
}

SparseOperator SparseOperator::diagonal(BasisPtr basis, const Eigen::VectorXcd& values) {
    if (values.size() != basis->dim()) {
        throw SectorMismatch("diagonal length does not match basis dimension");
    }
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(values.size()));
    for (std::int64_t i = 0; i < values.size(); ++i) {
        entries.push_back({i, i, values[i]});
    }
    return SparseOperator(basis, basis, std::move(entries));
}

SparseOperator SparseOperator::adjoint() const {
    std::vector<Triplet> entries;
    entries.reserve(entries_.size());
    for (const auto& e : entries_) {
        entries.push_back({e.col, e.row, std::conj(e.value)});
    }
    return SparseOperator(codomain_, domain_, std::move(entries));
}

bool SparseOperator::is_diagonal() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Triplet& e) { return e.row == e.col; });
}

bool SparseOperator::is_hermitian(double tol) const {
    if (!same_sector(*domain_, *codomain_)) return false;
    return (*this - adjoint()).max_abs() <= tol;
}

double SparseOperator::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
    return m;
}

Eigen::MatrixXcd SparseOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows(), cols());
    for (const auto& e : entries_) m(e.row, e.col) += e.value;
    return m;
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    if (!same_sector(*a.domain_, *b.domain_) || !same_sector(*a.codomain_, *b.codomain_)) {
        throw SectorMismatch("operator sum: sector bases differ");
    }
    std::vector<Triplet> entries = a.entries_;
    entries.insert(entries.end(), b.entries_.begin(), b.entries_.end());
    return SparseOperator(a.domain_, a.codomain_, std::move(entries));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
    return a + (Complex(-1.0, 0.0) * b);
}

SparseOperator operator*(Complex s, const SparseOperator& a) {
    std::vector<Triplet> entries = a.entries_;
    for (auto& e : entries) e.value *= s;
    return SparseOperator(a.domain_, a.codomain_, std::move(entries));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    if (!same_sector(*b.codomain_, *a.domain_)) {
        throw SectorMismatch("operator product: inner sector bases differ");
    }
    // Row-indexed view of b for the contraction sum_k a(i,k) b(k,j).
    std::vector<std::vector<std::pair<std::int64_t, Complex>>> b_rows(
        static_cast<std::size_t>(b.rows()));
    for (const auto& e : b.entries_) {
        b_rows[static_cast<std::size_t>(e.row)].emplace_back(e.col, e.value);
    }
    std::map<std::pair<std::int64_t, std::int64_t>, Complex> acc;
    for (const auto& ea : a.entries_) {
        for (const auto& [j, vb] : b_rows[static_cast<std::size_t>(ea.col)]) {
            acc[{ea.row, j}] += ea.value * vb;
        }
    }
    std::vector<Triplet> entries;
    entries.reserve(acc.size());
    for (const auto& [rc, v] : acc) entries.push_back({rc.first, rc.second, v});
    return SparseOperator(b.domain_, a.codomain_, std::move(entries));
}

SparseOperator ladder(int mode, LadderKind kind, BasisPtr domain, BasisPtr codomain) {
    if (mode < 0 || mode >= domain->mode_count()) {
        throw ModeOutOfRange("ladder: mode index out of range");
    }
    if (domain->mode_count() != codomain->mode_count()) {
        throw SectorMismatch("ladder: domain and codomain mode counts differ");
    }
    std::vector<Triplet> entries;
    std::int64_t candidates = 0;
    for (std::int64_t j = 0; j < domain->dim(); ++j) {
        OccupationState occ = domain->state(j);
        const int n = occ[static_cast<std::size_t>(mode)];
        double value;
        if (kind == LadderKind::raise_mode) {
            value = std::sqrt(static_cast<double>(n) + 1.0);
            occ[static_cast<std::size_t>(mode)] = n + 1;
        } else {
            if (n == 0) continue;  // annihilates the state, not a dropped image
            value = std::sqrt(static_cast<double>(n));
            occ[static_cast<std::size_t>(mode)] = n - 1;
        }
        ++candidates;
        if (const auto row = codomain->index_of(occ)) {
            entries.push_back({*row, j, Complex(value, 0.0)});
        }
    }
    if (candidates > 0 && entries.empty()) {
        throw SectorMismatch("ladder: codomain cannot hold any image state");
    }
    return SparseOperator(std::move(domain), std::move(codomain), std::move(entries));
}

SparseOperator quadratic(BasisPtr basis, int create_mode, int annihilate_mode) {
    const int modes = basis->mode_count();
    if (create_mode < 0 || create_mode >= modes || annihilate_mode < 0 ||
        annihilate_mode >= modes) {
        throw ModeOutOfRange("quadratic: mode index out of range");
    }
    std::vector<Triplet> entries;
    for (std::int64_t j = 0; j < basis->dim(); ++j) {
        OccupationState occ = basis->state(j);
        const int na = occ[static_cast<std::size_t>(annihilate_mode)];
        if (na == 0) continue;
        if (create_mode == annihilate_mode) {
            entries.push_back({j, j, Complex(static_cast<double>(na), 0.0)});
            continue;
        }
        const int nc = occ[static_cast<std::size_t>(create_mode)];
        occ[static_cast<std::size_t>(annihilate_mode)] = na - 1;
        occ[static_cast<std::size_t>(create_mode)] = nc + 1;
        if (const auto row = basis->index_of(occ)) {
            const double value = std::sqrt(static_cast<double>(na) * (nc + 1.0));
            entries.push_back({*row, j, Complex(value, 0.0)});
        }
    }
    return SparseOperator(basis, basis, std::move(entries));
}

SparseOperator lower_all_modes(BasisPtr basis) {
    std::vector<Triplet> entries;
    for (std::int64_t j = 0; j < basis->dim(); ++j) {
        OccupationState occ = basis->state(j);
        double value = 1.0;
        bool annihilated = false;
        for (auto& n : occ) {
            if (n == 0) {
                annihilated = true;
                break;
            }
            value *= std::sqrt(static_cast<double>(n));
            --n;
        }
        if (annihilated) continue;
        if (const auto row = basis->index_of(occ)) {
            entries.push_back({*row, j, Complex(value, 0.0)});
        }
    }
    return SparseOperator(basis, basis, std::move(entries));
}

SparseOperator number_mode(BasisPtr basis, int mode) {
    if (mode < 0 || mode >= basis->mode_count()) {
        throw ModeOutOfRange("number_mode: mode index out of range");
    }
    Eigen::VectorXcd diag(basis->dim());
    for (std::int64_t i = 0; i < basis->dim(); ++i) {
        diag[i] = static_cast<double>(basis->state(i)[static_cast<std::size_t>(mode)]);
    }
    return SparseOperator::diagonal(std::move(basis), diag);
}

SparseOperator number_total(BasisPtr basis) {
    Eigen::VectorXcd diag(basis->dim());
    for (std::int64_t i = 0; i < basis->dim(); ++i) {
        diag[i] = static_cast<double>(total_occupation(basis->state(i)));
    }
    return SparseOperator::diagonal(std::move(basis), diag);
}

StructureConstants::StructureConstants(int dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(dim_) * dim_ * dim_) {
        throw InvalidSpec("structure constants: wrong tensor size");
    }
}

double StructureConstants::max_antisymmetry_violation() const {
    double worst = 0.0;
    const auto& f = *this;
    for (int a = 0; a < dim_; ++a) {
        for (int b = 0; b < dim_; ++b) {
            for (int c = 0; c < dim_; ++c) {
                worst = std::max(worst, std::abs(f(a, b, c) + f(b, a, c)));
                worst = std::max(worst, std::abs(f(a, b, c) + f(a, c, b)));
                worst = std::max(worst, std::abs(f(a, b, c) - f(b, c, a)));
            }
        }
    }
    return worst;
}

StructureConstants structure_constants_from_fundamental(GroupLabel group) {
    const auto basis_matrices = fundamental_matrices(group);
    const int d = static_cast<int>(basis_matrices.size());
    std::vector<Eigen::MatrixXcd> t;
    t.reserve(basis_matrices.size());
    for (const auto& m : basis_matrices) t.push_back(0.5 * m);

    std::vector<double> f(static_cast<std::size_t>(d) * d * d, 0.0);
    const Complex minus_two_i(0.0, -2.0);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            const Eigen::MatrixXcd comm = t[a] * t[b] - t[b] * t[a];
            for (int c = 0; c < d; ++c) {
                const Complex val = minus_two_i * (comm * t[c]).trace();
                // Exact algebra gives a real tensor; the imaginary part is
                // floating-point dust.
                f[static_cast<std::size_t>((a * d + b) * d + c)] = val.real();
            }
        }
    }
    return StructureConstants(d, std::move(f));
}

namespace {

GeneratorSet make_generator_set(GroupLabel label, std::vector<SparseOperator> gens,
                                StructureConstants f) {
    for (const auto& g : gens) {
        if (!g.is_hermitian(1e-12)) {
            throw NotHermitian("generator set: non-Hermitian generator");
        }
    }
    if (f.max_antisymmetry_violation() > 1e-13) {
        throw InvalidSpec("generator set: structure constants not antisymmetric");
    }
    return GeneratorSet{label, std::move(gens), std::move(f)};
}

}  // namespace

GeneratorSet su2_generators(BasisPtr basis) {
    if (basis->mode_count() != 2) {
        throw ModeMismatch("su2_generators: basis must have 2 modes");
    }
    const Complex half(0.5, 0.0);
    const Complex mihalf(0.0, -0.5);
    const auto q01 = quadratic(basis, 0, 1);
    const auto q10 = quadratic(basis, 1, 0);
    std::vector<SparseOperator> j;
    j.push_back(half * (q01 + q10));
    j.push_back(mihalf * (q01 - q10));
    j.push_back(half * (number_mode(basis, 0) - number_mode(basis, 1)));
    return make_generator_set(GroupLabel::su2, std::move(j),
                              structure_constants_from_fundamental(GroupLabel::su2));
}

GeneratorSet su3_generators(BasisPtr basis) {
    if (basis->mode_count() != 3) {
        throw ModeMismatch("su3_generators: basis must have 3 modes");
    }
    const Complex half(0.5, 0.0);
    const Complex mihalf(0.0, -0.5);
    auto sym = [&](int a, int b) { return half * (quadratic(basis, a, b) + quadratic(basis, b, a)); };
    auto asym = [&](int a, int b) { return mihalf * (quadratic(basis, a, b) - quadratic(basis, b, a)); };
    const auto n0 = number_mode(basis, 0);
    const auto n1 = number_mode(basis, 1);
    const auto n2 = number_mode(basis, 2);

    std::vector<SparseOperator> q;
    q.push_back(sym(0, 1));                                            // Q1
    q.push_back(asym(0, 1));                                           // Q2
    q.push_back(half * (n0 - n1));                                     // Q3
    q.push_back(sym(0, 2));                                            // Q4
    q.push_back(asym(0, 2));                                           // Q5
    q.push_back(sym(1, 2));                                            // Q6
    q.push_back(asym(1, 2));                                           // Q7
    const Complex c8(0.5 / std::sqrt(3.0), 0.0);
    q.push_back(c8 * (n0 + n1 - Complex(2.0, 0.0) * n2));              // Q8
    return make_generator_set(GroupLabel::su3, std::move(q),
                              structure_constants_from_fundamental(GroupLabel::su3));
}

std::vector<SparseOperator> sun_cartan_charges(BasisPtr basis) {
    const int modes = basis->mode_count();
    if (modes < 2) throw ModeMismatch("sun_cartan_charges: need at least 2 modes");
    std::vector<SparseOperator> charges;
    charges.reserve(static_cast<std::size_t>(modes) - 1);
    for (int l = 0; l + 1 < modes; ++l) {
        charges.push_back(number_mode(basis, l) - number_mode(basis, l + 1));
    }
    return charges;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    require_endomorphism(a, "commutator");
    require_endomorphism(b, "commutator");
    if (!same_sector(*a.domain(), *b.domain())) {
        throw SectorMismatch("commutator: operators live on different sectors");
    }
    return a * b - b * a;
}

Eigen::MatrixXcd hermitian_expm(const SparseOperator& h, double t) {
    require_endomorphism(h, "hermitian_expm");
    if (h.rows() > 2000) {
        throw DimensionTooLarge("hermitian_expm: sector too large to densify");
    }
    if (!h.is_hermitian(1e-12)) {
        throw NotHermitian("hermitian_expm: operator is not Hermitian");
    }
    const Eigen::MatrixXcd dense = h.dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_expm: eigendecomposition failed");
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    Eigen::VectorXcd phases(ev.size());
    for (std::int64_t k = 0; k < ev.size(); ++k) {
        phases[k] = std::exp(Complex(0.0, t * ev[k]));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Ket apply(const SparseOperator& op, const Ket& ket) {
    if (!same_sector(*ket.basis, *op.domain())) {
        throw SectorMismatch("apply: ket does not live on the operator domain");
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(op.rows());
    for (const auto& e : op.entries()) {
        out[e.row] += e.value * ket.amps[e.col];
    }
    return Ket{op.codomain(), std::move(out)};
}

}  // namespace scs

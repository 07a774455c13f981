#ifndef SCS_FOCK_HPP
#define SCS_FOCK_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scs/errors.hpp"

namespace scs {

// Per-mode boson counts (n_1, ..., n_N).
using OccupationState = std::vector<int>;

// Total occupation of a state.
int total_occupation(const OccupationState& occ);

// Sector constraints. All charge families are infinite ladders, so their
// truncation parameter is always an explicit caller input.
//
// FixedTotal    : n_1 + ... + n_N = n.
// PlainTruncation: 0 <= n_i <= n_max independently for every mode.
// SU2Charge     : two modes with n_1 - n_2 = q; ladder |q+r, r> for r = 0..r_max
//                 when q >= 0, mirrored to |r, r-q> when q < 0.
// SU3ChargeHyper: three modes |p+l, p+l-q, p> for p = 0..p_max; requires
//                 l >= max(0, q) so occupations are non-negative at p = 0.
// SUNCharges    : n_i - n_{i+1} = q_i for i = 1..N-1, with n_N = 0..cutoff;
//                 requires every partial sum sum_{j>=i} q_j >= 0.
struct FixedTotal {
    int n = 0;
};
struct PlainTruncation {
    int n_max = 0;
};
struct SU2Charge {
    int q = 0;
    int r_max = 0;
};
struct SU3ChargeHyper {
    int q = 0;
    int l = 0;
    int p_max = 0;
};
struct SUNCharges {
    std::vector<int> charges;  // q_1 .. q_{N-1}
    int cutoff = 0;
};

using SectorConstraint =
    std::variant<FixedTotal, PlainTruncation, SU2Charge, SU3ChargeHyper, SUNCharges>;

struct SectorSpec {
    int mode_count = 1;
    SectorConstraint constraint;

    // Throws InvalidSpec if the parameters violate the constraint invariants.
    void validate() const;

    bool operator==(const SectorSpec& other) const;
};

// Ordered enumeration of the occupation states in one sector.
//
// Ordering convention (deterministic, so serialized reports reproduce
// bit-for-bit):
//   - FixedTotal: lexicographically decreasing counts, i.e. |n,0,..>, ...,
//     |0,..,n>. This is the ladder order m = 0..n of the two-mode states
//     |n-m, m> and puts the highest-weight state first.
//   - PlainTruncation: lexicographically increasing counts (vacuum first).
//   - Charge chains: ladder parameter (r, p, n_N) increasing, which is also
//     increasing total occupation.
class SectorBasis {
public:
    explicit SectorBasis(SectorSpec spec);

    const SectorSpec& spec() const { return spec_; }
    int mode_count() const { return spec_.mode_count; }
    std::int64_t dim() const { return static_cast<std::int64_t>(states_.size()); }

    const std::vector<OccupationState>& states() const { return states_; }
    const OccupationState& state(std::int64_t i) const { return states_[static_cast<std::size_t>(i)]; }

    // Position of `occ` in this sector, or empty if it does not satisfy the
    // constraint. Throws ModeMismatch when the mode counts differ.
    std::optional<std::int64_t> index_of(const OccupationState& occ) const;

private:
    SectorSpec spec_;
    std::vector<OccupationState> states_;
    std::map<OccupationState, std::int64_t> index_;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

// Materializes the sector basis. Throws InvalidSpec if the spec is invalid.
BasisPtr enumerate_sector(const SectorSpec& spec);

// Dimension from the closed form for the sector kind, without materializing
// the basis.
std::int64_t sector_dimension(const SectorSpec& spec);

std::optional<std::int64_t> index_of(const SectorBasis& basis, const OccupationState& occ);

// Convenience constructors.
SectorSpec fixed_total_spec(int modes, int n);
SectorSpec plain_truncation_spec(int modes, int n_max);
SectorSpec su2_charge_spec(int q, int r_max);
SectorSpec su3_charge_spec(int q, int l, int p_max);
SectorSpec sun_charges_spec(int modes, std::vector<int> charges, int cutoff);

}  // namespace scs

#endif

#include "scs/fock.hpp"

#include <algorithm>
#include <numeric>

namespace scs {

namespace {

constexpr std::int64_t kMaxStates = 10'000'000;  // desk-scale guard

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

// Occupations of the charge-ladder state at rung `step`, shared by the SU(2),
// SU(3) and SU(N) chains: n_i = step + sum_{j>=i} q_j.
OccupationState ladder_state(const std::vector<int>& suffix_sums, int step) {
    OccupationState occ(suffix_sums.size() + 1);
    for (std::size_t i = 0; i < suffix_sums.size(); ++i) {
        occ[i] = step + suffix_sums[i];
    }
    occ.back() = step;
    return occ;
}

std::vector<int> suffix_sums_of(const std::vector<int>& charges) {
    std::vector<int> sums(charges.size());
    int acc = 0;
    for (std::size_t i = charges.size(); i-- > 0;) {
        acc += charges[i];
        sums[i] = acc;
    }
    return sums;
}

// SU(2) ladder occupations with the q<0 mirror convention.
OccupationState su2_ladder_state(int q, int r) {
    if (q >= 0) return {q + r, r};
    return {r, r - q};
}

}  // namespace

int total_occupation(const OccupationState& occ) {
    return std::accumulate(occ.begin(), occ.end(), 0);
}

void SectorSpec::validate() const {
    if (mode_count < 1) throw InvalidSpec("mode_count must be >= 1");
    if (const auto* ft = std::get_if<FixedTotal>(&constraint)) {
        if (ft->n < 0) throw InvalidSpec("FixedTotal: n must be >= 0");
    } else if (const auto* pt = std::get_if<PlainTruncation>(&constraint)) {
        if (pt->n_max < 0) throw InvalidSpec("PlainTruncation: n_max must be >= 0");
    } else if (const auto* c2 = std::get_if<SU2Charge>(&constraint)) {
        if (mode_count != 2) throw InvalidSpec("SU2Charge: requires 2 modes");
        if (c2->r_max < 0) throw InvalidSpec("SU2Charge: r_max must be >= 0");
    } else if (const auto* c3 = std::get_if<SU3ChargeHyper>(&constraint)) {
        if (mode_count != 3) throw InvalidSpec("SU3ChargeHyper: requires 3 modes");
        if (c3->p_max < 0) throw InvalidSpec("SU3ChargeHyper: p_max must be >= 0");
        if (c3->l < std::max(0, c3->q)) {
            throw InvalidSpec("SU3ChargeHyper: l must be >= max(0, q)");
        }
    } else if (const auto* cn = std::get_if<SUNCharges>(&constraint)) {
        if (mode_count < 2) throw InvalidSpec("SUNCharges: requires >= 2 modes");
        if (static_cast<int>(cn->charges.size()) != mode_count - 1) {
            throw InvalidSpec("SUNCharges: expected mode_count-1 charges");
        }
        if (cn->cutoff < 0) throw InvalidSpec("SUNCharges: cutoff must be >= 0");
        const auto sums = suffix_sums_of(cn->charges);
        for (int s : sums) {
            if (s < 0) {
                throw InvalidSpec("SUNCharges: partial charge sums must be >= 0");
            }
        }
    }
}

bool SectorSpec::operator==(const SectorSpec& other) const {
    if (mode_count != other.mode_count) return false;
    if (constraint.index() != other.constraint.index()) return false;
    return std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(other.constraint);
            if constexpr (std::is_same_v<T, FixedTotal>) {
                return a.n == b.n;
            } else if constexpr (std::is_same_v<T, PlainTruncation>) {
                return a.n_max == b.n_max;
            } else if constexpr (std::is_same_v<T, SU2Charge>) {
                return a.q == b.q && a.r_max == b.r_max;
            } else if constexpr (std::is_same_v<T, SU3ChargeHyper>) {
                return a.q == b.q && a.l == b.l && a.p_max == b.p_max;
            } else {
                return a.charges == b.charges && a.cutoff == b.cutoff;
            }
        },
        constraint);
}

SectorBasis::SectorBasis(SectorSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const std::int64_t dim = sector_dimension(spec_);
    if (dim > kMaxStates) {
        throw InvalidSpec("sector dimension exceeds the desk-scale limit");
    }
    states_.reserve(static_cast<std::size_t>(dim));
    const int modes = spec_.mode_count;

    if (const auto* ft = std::get_if<FixedTotal>(&spec_.constraint)) {
        // Lexicographically decreasing: recurse with the leading mode taking
        // the largest remaining count first.
        OccupationState occ(modes, 0);
        auto emit = [&](auto&& self, int mode, int remaining) -> void {
            if (mode == modes - 1) {
                occ[mode] = remaining;
                states_.push_back(occ);
                return;
            }
            for (int k = remaining; k >= 0; --k) {
                occ[mode] = k;
                self(self, mode + 1, remaining - k);
            }
        };
        emit(emit, 0, ft->n);
    } else if (const auto* pt = std::get_if<PlainTruncation>(&spec_.constraint)) {
        OccupationState occ(modes, 0);
        while (true) {
            states_.push_back(occ);
            int m = modes - 1;
            while (m >= 0 && occ[m] == pt->n_max) {
                occ[m] = 0;
                --m;
            }
            if (m < 0) break;
            ++occ[m];
        }
    } else if (const auto* c2 = std::get_if<SU2Charge>(&spec_.constraint)) {
        for (int r = 0; r <= c2->r_max; ++r) {
            states_.push_back(su2_ladder_state(c2->q, r));
        }
    } else if (const auto* c3 = std::get_if<SU3ChargeHyper>(&spec_.constraint)) {
        for (int p = 0; p <= c3->p_max; ++p) {
            states_.push_back({p + c3->l, p + c3->l - c3->q, p});
        }
    } else if (const auto* cn = std::get_if<SUNCharges>(&spec_.constraint)) {
        const auto sums = suffix_sums_of(cn->charges);
        for (int step = 0; step <= cn->cutoff; ++step) {
            states_.push_back(ladder_state(sums, step));
        }
    }

    for (std::size_t i = 0; i < states_.size(); ++i) {
        index_.emplace(states_[i], static_cast<std::int64_t>(i));
    }
}

std::optional<std::int64_t> SectorBasis::index_of(const OccupationState& occ) const {
    if (static_cast<int>(occ.size()) != spec_.mode_count) {
        throw ModeMismatch("occupation state has wrong number of modes");
    }
    const auto it = index_.find(occ);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

BasisPtr enumerate_sector(const SectorSpec& spec) {
    return std::make_shared<SectorBasis>(spec);
}

std::int64_t sector_dimension(const SectorSpec& spec) {
    spec.validate();
    const int modes = spec.mode_count;
    if (const auto* ft = std::get_if<FixedTotal>(&spec.constraint)) {
        return binomial(ft->n + modes - 1, modes - 1);
    }
    if (const auto* pt = std::get_if<PlainTruncation>(&spec.constraint)) {
        std::int64_t dim = 1;
        for (int i = 0; i < modes; ++i) {
            dim *= pt->n_max + 1;
            if (dim > kMaxStates) return dim;  // caller's guard trips
        }
        return dim;
    }
    if (const auto* c2 = std::get_if<SU2Charge>(&spec.constraint)) {
        return c2->r_max + 1;
    }
    if (const auto* c3 = std::get_if<SU3ChargeHyper>(&spec.constraint)) {
        return c3->p_max + 1;
    }
    return std::get<SUNCharges>(spec.constraint).cutoff + 1;
}

std::optional<std::int64_t> index_of(const SectorBasis& basis, const OccupationState& occ) {
    return basis.index_of(occ);
}

SectorSpec fixed_total_spec(int modes, int n) {
    return SectorSpec{modes, FixedTotal{n}};
}

SectorSpec plain_truncation_spec(int modes, int n_max) {
    return SectorSpec{modes, PlainTruncation{n_max}};
}

SectorSpec su2_charge_spec(int q, int r_max) {
    return SectorSpec{2, SU2Charge{q, r_max}};
}

SectorSpec su3_charge_spec(int q, int l, int p_max) {
    return SectorSpec{3, SU3ChargeHyper{q, l, p_max}};
}

SectorSpec sun_charges_spec(int modes, std::vector<int> charges, int cutoff) {
    return SectorSpec{modes, SUNCharges{std::move(charges), cutoff}};
}

}  // namespace scs

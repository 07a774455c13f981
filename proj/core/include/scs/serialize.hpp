#ifndef SCS_SERIALIZE_HPP
#define SCS_SERIALIZE_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "scs/fock.hpp"
#include "scs/ket.hpp"
#include "scs/operators.hpp"
#include "scs/verify.hpp"

namespace scs {

// Insertion-ordered JSON so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

// {"modes": N, "kind": "...", ...params}
Json to_json(const SectorSpec& spec);
SectorSpec sector_spec_from_json(const Json& j);

// {"basis": <spec>, "amps": [[re, im], ...]}
Json to_json(const Ket& ket);

// Triplet dump: {"rows": [...], "cols": [...], "re": [...], "im": [...]}
Json to_json(const SparseOperator& op);

Json to_json(const CheckReport& report);

// CSV columns: check_name, params, residual, tolerance, passed, runtime_ms.
std::string csv_header();
std::string to_csv_row(const CheckReport& report);

// {"constant": c, "residual": r, "dim": d}
Json gram_report(double constant, double residual, std::int64_t dim);

}  // namespace scs

#endif

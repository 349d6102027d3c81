#pragma once

// JSON for contexts, presentations, psi maps and every report type. Words are
// 1-based on the wire and 0-based in memory. Scalars travel as literals in the
// declared conductor.

#include <nlohmann/json.hpp>

#include "koszul/komplex.hpp"

namespace koszul {

using json = nlohmann::json;

/// Malformed or inconsistent input (the CLI maps this to exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace io {

Scalar scalar_from(const json& j, int conductor);
json scalar_to(const Scalar& s);

json context_to(const TensorContext& ctx);
/// {"conductor": m, "dimV": n, "group_generators": [[row-major entries]]}
ContextPtr context_from(const json& j);

/// [{"coeff", "word", "g"}] for x in F^top.
json filtered_element_to(const TensorContext& ctx, const SparseVector& x, std::size_t top);
SparseVector filtered_element_from(const TensorContext& ctx, const json& terms, std::size_t top);
json terms_to(const std::vector<Term>& terms);
std::vector<Term> terms_from(const json& j, int conductor);

json psi_to(const PsiMap& psi);
/// Plain {"p", "psi": [...]} or the corollary45 / symplectic_reflection builders.
PsiMap psi_from(const json& j, const GroupData& group, int conductor);

/// Emits the explicit form: context, N, family and the RREF rows of P.
json presentation_to(const FilteredPresentation& pres);
/// Explicit form or a builder: down_up, lie, h_psi (with "psi"), corollary45, symplectic_reflection.
FilteredPresentation presentation_from(const json& j);

}  // namespace io

void to_json(json& j, const DegreeCheck& r);
void from_json(const json& j, DegreeCheck& r);
void to_json(json& j, const ECReport& r);
void from_json(const json& j, ECReport& r);
void to_json(json& j, const Tor3Verdict& r);
void from_json(const json& j, Tor3Verdict& r);
void to_json(json& j, const KoszulSlice& r);
void from_json(const json& j, KoszulSlice& r);
void to_json(json& j, const KoszulCertificate& r);
void from_json(const json& j, KoszulCertificate& r);
void to_json(json& j, const ConditionJReport& r);
void from_json(const json& j, ConditionJReport& r);
void to_json(json& j, const OracleReport& r);
void from_json(const json& j, OracleReport& r);
void to_json(json& j, const PBWReport& r);
void from_json(const json& j, PBWReport& r);
void to_json(json& j, const ComponentRow& r);
void from_json(const json& j, ComponentRow& r);
void to_json(json& j, const Theorem44Report& r);
void from_json(const json& j, Theorem44Report& r);
void to_json(json& j, const NComplexReport& r);
void from_json(const json& j, NComplexReport& r);
void to_json(json& j, const ContractedSlice& r);
void from_json(const json& j, ContractedSlice& r);
void to_json(json& j, const ContractedReport& r);
void from_json(const json& j, ContractedReport& r);

}  // namespace koszul

#pragma once

// JSON views of the library types, shared by the CLI and the session service.

#include <json.hpp>

#include "cliffrw/circuit.hpp"
#include "cliffrw/rewrite/derivation.hpp"
#include "cliffrw/rewrite/rules.hpp"
#include "cliffrw/sim/identities.hpp"
#include "cliffrw/sim/sample.hpp"
#include "cliffrw/sim/unitary.hpp"
#include "cliffrw/taxonomy.hpp"

namespace cliffrw::service {

using Json = nlohmann::json;

[[nodiscard]] Json gate_json(const Gate& g);
/// {"cqc", "hash", "qubits", "bits", "revision", "gates": [...]}
[[nodiscard]] Json circuit_json(const Circuit& c);
[[nodiscard]] Json match_json(const rewrite::Match& m);

/// Reads {"rule", "at", "wires", "position", "direction", "policy"}; only
/// "rule" is required. The revision is left at 0 for the caller to fill.
/// Throws ValidationError on unknown names or wrong field types.
[[nodiscard]] rewrite::Match match_from_json(const Json& j);

[[nodiscard]] Json step_json(const rewrite::DerivationStep& s, std::size_t index);
[[nodiscard]] Json derivation_json(const rewrite::Derivation& d);
[[nodiscard]] Json verdict_json(const taxonomy::FamilyVerdict& v);
[[nodiscard]] Json equivalence_json(const sim::EquivalenceReport& r);
[[nodiscard]] Json rule_json(rewrite::RuleId rule);
[[nodiscard]] Json identity_json(const sim::IdentityCheck& c);

/// "verified", "failed", "unverified (size)" or "unchecked".
[[nodiscard]] std::string badge(rewrite::StepCheck check);

/// Number of forward matches per rule, omitting rules without any.
[[nodiscard]] Json matches_summary(const Circuit& c, rewrite::BarrierPolicy policy);

}  // namespace cliffrw::service

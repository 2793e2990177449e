#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliffrw/circuit.hpp"

namespace cliffrw::rewrite {

enum class RuleId {
    HH_CANCEL,
    XX_CANCEL,
    ZZ_CANCEL,
    HXH_TO_Z,
    HZH_TO_X,
    CX_TO_HCZH,
    CZ_TO_HCXH,
    CX_FULL_H_REVERSE,
    MCX_TO_HMCZH,
    MCZ_TO_HMCXH,
    DISJOINT_COMMUTE,
    DIAGONAL_COMMUTE,
    X_THROUGH_MCZ,
    CZ_PAST_X,
    MCZ_EXHAUSTION_MERGE,
    OPEN_CONTROL_DESUGAR,
    OPEN_CONTROL_RESUGAR,
    ANCILLA_SEVER,
    CX_CONTROL_SAME_AS_X,
    BARRIER_INSERT,
};

enum class Direction { Forward, Backward };

/// How barriers take part in matching. Opaque barriers separate gates that
/// would otherwise be adjacent on a wire; transparent barriers are skipped.
enum class BarrierPolicy { Opaque, Transparent };

[[nodiscard]] std::string_view to_string(RuleId rule) noexcept;
[[nodiscard]] std::string_view to_string(Direction dir) noexcept;
[[nodiscard]] std::string_view to_string(BarrierPolicy policy) noexcept;
[[nodiscard]] std::optional<RuleId> rule_from_string(std::string_view name) noexcept;
[[nodiscard]] std::optional<Direction> direction_from_string(std::string_view name) noexcept;
[[nodiscard]] std::optional<BarrierPolicy> policy_from_string(std::string_view name) noexcept;
[[nodiscard]] const std::vector<RuleId>& all_rules();

/// One applicable site of a rule.
///
/// `gate_indices` lists the matched gates in pattern order. Rules that only
/// insert gates (backward cancellations, barrier insertion) match no gates and
/// use `position` (insert before this index) and `wires` instead. `revision`
/// is the revision of the circuit the match was found on.
struct Match {
    RuleId rule = RuleId::HH_CANCEL;
    Direction direction = Direction::Forward;
    std::vector<std::size_t> gate_indices;
    std::vector<int> wires;
    std::size_t position = 0;
    std::uint64_t revision = 0;
    BarrierPolicy policy = BarrierPolicy::Opaque;

    friend bool operator==(const Match&, const Match&) = default;
};

[[nodiscard]] std::string describe(const Match& m);

struct RuleSemantics {
    RuleId rule;
    std::string pattern;
    std::string replacement;
    /// Rule identifies its inverse; `inverse_direction` tells which way to run it.
    RuleId inverse;
    Direction inverse_direction;
    /// Valid only for the prepared input state, not as an operator identity.
    bool state_dependent = false;
};

[[nodiscard]] RuleSemantics rule_semantics(RuleId rule);

/// Every applicable site, ordered by primary gate index (or insertion position).
[[nodiscard]] std::vector<Match> find_matches(const Circuit& c, RuleId rule,
                                              BarrierPolicy policy = BarrierPolicy::Opaque,
                                              Direction direction = Direction::Forward);

/// Applies a match found on `c`. The match is checked against the circuit
/// revision and revalidated; an empty `wires` list accepts the first site with
/// the same gates and position.
/// Throws StaleMatchError, or BarrierViolationError when the site only exists
/// with transparent barriers.
[[nodiscard]] Circuit apply_rule(const Circuit& c, const Match& m);

/// Removes every participation of a prepared ancilla (see ANCILLA_SEVER).
/// Throws SeverError when the preparation or the ancilla's later use does not
/// establish the needed eigenstate.
[[nodiscard]] Circuit sever_ancilla(const Circuit& c, int ancilla);

/// Merges a group of phase gates on the same wires whose polarity patterns
/// pairwise differ in one wire, repeatedly, until no pair is left. The group
/// is given as gate indices or as the union of the gates of a set of
/// MCZ_EXHAUSTION_MERGE matches. Throws NotMergeableError if no pair merges.
[[nodiscard]] Circuit exhaustion_merge(const Circuit& c, const std::vector<std::size_t>& gate_indices,
                                       BarrierPolicy policy = BarrierPolicy::Opaque);
[[nodiscard]] Circuit exhaustion_merge(const Circuit& c, const std::vector<Match>& group);

/// Basis-input wires a state-dependent rule assumes to start in |0>, as a
/// bit mask; 0 for rules that are operator identities.
[[nodiscard]] std::uint64_t input_constraint_mask(const Match& m) noexcept;

/// Phase gate equal to (-1)^[all participants satisfied] up to global phase;
/// empty when the participant list is empty (pure global phase).
[[nodiscard]] std::optional<Gate> phase_up_to_global(std::vector<Control> participants);

}  // namespace cliffrw::rewrite

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "cliffrw/circuit.hpp"
#include "cliffrw/rewrite/derivation.hpp"

namespace cliffrw::rewrite {

/// Rewrite strategies run to a fixpoint.
///
/// CancelOnly removes HH, XX and identical phase-gate pairs. PushLeft adds
/// Hadamard sliding inside each barrier block: an H with nothing before it
/// on its wire moves to the front of the block and an H with nothing after it
/// moves to the back. Full runs, in rounds until nothing changes: open-control
/// desugaring, pushing X gates rightwards through phase gates, exhaustion
/// merges, cancellation (with H X H and H Z H collapsed to one gate), and a
/// canonical order for adjacent diagonal gates.
enum class Strategy { CancelOnly, PushLeft, Full };

[[nodiscard]] std::string_view to_string(Strategy s) noexcept;
[[nodiscard]] std::optional<Strategy> strategy_from_string(std::string_view name) noexcept;

struct NormalizeOptions {
    BarrierPolicy policy = BarrierPolicy::Opaque;
    /// Maximum number of rule applications; defaults to 10 * |gates|^2.
    std::optional<std::size_t> budget;
};

struct NormalizeResult {
    Circuit circuit;
    Derivation derivation;
};

/// Throws BudgetExceededError when the step budget runs out.
[[nodiscard]] NormalizeResult normalize(const Circuit& c, Strategy strategy, const NormalizeOptions& options = {});

}  // namespace cliffrw::rewrite

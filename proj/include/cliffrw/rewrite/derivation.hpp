#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cliffrw/circuit.hpp"
#include "cliffrw/rewrite/rules.hpp"

namespace cliffrw::rewrite {

enum class StepCheck {
    Unchecked,
    Verified,
    /// Wider than the dense unitary limit; nothing was claimed.
    Skipped,
    Failed,
};

[[nodiscard]] std::string_view to_string(StepCheck check) noexcept;

struct DerivationStep {
    Match match;
    Circuit snapshot;
    StepCheck check = StepCheck::Unchecked;
    /// Free-form milestone tag; only [A-Za-z0-9_.-] survives serialization.
    std::string label;
};

/// A starting circuit and the rule applications that lead away from it.
class Derivation {
public:
    explicit Derivation(Circuit initial);

    [[nodiscard]] const Circuit& initial() const noexcept { return initial_; }
    [[nodiscard]] const Circuit& current() const noexcept;
    [[nodiscard]] const std::vector<DerivationStep>& steps() const noexcept { return steps_; }
    [[nodiscard]] std::size_t size() const noexcept { return steps_.size(); }
    /// Snapshot k, where 0 is the initial circuit.
    [[nodiscard]] const Circuit& snapshot(std::size_t k) const;

    /// Applies `m` to the current circuit and records the step. The match
    /// revision is rebased onto the current circuit first.
    const Circuit& apply(Match m, std::string label = {});
    /// Labels the current snapshot, or the initial circuit when there are no steps.
    void label_current(std::string label);
    [[nodiscard]] const std::string& initial_label() const noexcept { return initial_label_; }
    void undo();

    /// Indices k whose snapshot carries a label (0 for a labelled initial circuit).
    [[nodiscard]] std::vector<std::size_t> milestones() const;

    /// Certifies every unchecked step; returns true when no step failed.
    bool verify(double tol = 1e-10);
    [[nodiscard]] bool all_verified() const noexcept;

    /// Appends a pre-built step, e.g. from a parsed trace. Nothing is checked.
    void push_step(DerivationStep step);

private:
    Circuit initial_;
    std::string initial_label_;
    std::vector<DerivationStep> steps_;
};

/// Equivalence of one step, restricted to the constrained input subspace for
/// state-dependent rules. Measurements are ignored.
[[nodiscard]] StepCheck verify_step(const Circuit& before, const Circuit& after, const Match& m, double tol = 1e-10);

/// Line-oriented trace: a header, the initial circuit, and one
/// `step K: rule=... at=[...] ... -> <hash>` line per step, each followed by
/// its snapshot in CQC indented by two spaces.
[[nodiscard]] std::string serialize(const Derivation& d);
/// Inverse of serialize. Hashes are checked against the embedded snapshots.
[[nodiscard]] Derivation parse_derivation(std::string_view text);

/// Re-applies every step from the initial circuit and returns the first step
/// (1-based) whose result differs from the recorded snapshot, or 0 when all match.
[[nodiscard]] std::size_t replay_mismatch(const Derivation& d);

}  // namespace cliffrw::rewrite

#pragma once

// Bernstein-Vazirani and Deutsch-Jozsa builders, and the scripted derivations
// connecting their different forms.

#include <string>
#include <string_view>
#include <vector>

#include "cliffrw/circuit.hpp"
#include "cliffrw/rewrite/derivation.hpp"

namespace cliffrw::algorithms {

/// Throws ValidationError unless `s` is a nonempty string of 0 and 1.
void validate_secret(std::string_view s);

/// Wire k of the data register carries character (n-1-k) of the secret, so a
/// measurement string printed with bit n-1 leftmost reads back `s`. The
/// ancilla is wire n.
[[nodiscard]] Circuit build_bv_classical(std::string_view s);
[[nodiscard]] Circuit build_bv_cz(std::string_view s);
[[nodiscard]] Circuit build_bv_canonical(std::string_view s);

/// Milestone names of the BV derivation, in order.
[[nodiscard]] const std::vector<std::string>& bv_stage_names();

/// Scripted rewrite chain from build_bv_classical(s) to build_bv_canonical(s).
/// Each milestone snapshot is labelled with its stage name; a stage that
/// needs no rewrite shares the previous snapshot and the labels are joined
/// with '.'.
[[nodiscard]] rewrite::Derivation derive_bv_chain(std::string_view s);

/// One circuit per stage name, expanded from the derivation's labels.
/// Throws ValidationError when a stage is missing.
[[nodiscard]] std::vector<Circuit> stage_snapshots(const rewrite::Derivation& d,
                                                   const std::vector<std::string>& names);

/// Basis labels the oracle flips the ancilla on; the leftmost character of a
/// label is the highest data wire.
using MarkedSet = std::vector<std::string>;

/// {011, 100, 101, 110}: the states where (q0 AND q1) XOR q2 is 1.
[[nodiscard]] const MarkedSet& dj_quadratic_marked();

enum class ControlStyle { Closed, Open };

/// Oracle on n data wires and the ancilla n. Closed style wraps each MCX in X
/// gates on the wires whose label bit is 0; open style uses open controls.
/// Throws ValidationError for malformed or duplicate labels.
[[nodiscard]] Circuit build_dj_oracle(const MarkedSet& marked, ControlStyle style = ControlStyle::Closed);
[[nodiscard]] Circuit build_dj_quadratic(ControlStyle style = ControlStyle::Closed);

/// [X a, H on all wires, barrier, oracle, barrier, H on all wires, measure
/// data], the ancilla being the last wire of `oracle`.
[[nodiscard]] Circuit wrap_dj(const Circuit& oracle);

[[nodiscard]] const std::vector<std::string>& dj_stage_names();

/// Scripted reduction of wrap_dj(build_dj_quadratic()) to the irreducible
/// phase oracle CZ q0 q1, Z q2 with the ancilla severed.
[[nodiscard]] rewrite::Derivation derive_dj_reduction();

/// Gates between the first two barriers as a circuit on the data wires
/// 0..num_data-1. Throws ValidationError if the block touches other wires or
/// the barriers are missing.
[[nodiscard]] Circuit extract_phase_oracle(const Circuit& c, int num_data);

}  // namespace cliffrw::algorithms

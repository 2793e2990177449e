#pragma once

// Basis-alignment classification of circuits.
//
// Family I circuits are classical reversible logic. Family II circuits
// become classical (up to local Z signs) once some wires are viewed in the X
// basis, i.e. after conjugating them by H at both ends. Everything else is
// Family III.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliffrw/circuit.hpp"

namespace cliffrw::taxonomy {

enum class Basis { Z, X };

/// Per-wire basis tag.
using Frame = std::vector<Basis>;

/// "ZXX..." with character k describing wire k.
[[nodiscard]] std::string to_string(const Frame& f);
/// Throws ValidationError on characters other than Z and X.
[[nodiscard]] Frame frame_from_string(std::string_view s);
[[nodiscard]] Frame uniform_frame(int num_qubits, Basis b);

enum class Family { I, II, III };

[[nodiscard]] std::string_view to_string(Family f) noexcept;

/// Exhaustive frame search is used up to this width, a greedy pass above it.
inline constexpr int kExhaustiveFrameLimit = 16;

struct FamilyVerdict {
    Family family = Family::III;
    /// False only for a Family III verdict reached without exhaustive search or an entanglement witness.
    bool confirmed = true;
    /// Family II witness: the frame and the circuit it reduces to.
    std::optional<Frame> frame;
    std::optional<Circuit> reduced;
    /// Family III witness for Clifford circuits: one side of a cut, a basis
    /// input, and the entanglement rank across the cut (>= 1).
    std::vector<int> cut;
    std::string input;
    int rank = 0;
    /// Which checks ran and why some were skipped.
    std::vector<std::string> notes;

    /// "I", "II", "III" or "III (unconfirmed)".
    [[nodiscard]] std::string label() const;
};

/// Every unitary gate is X-family (any polarity), SWAP or I.
[[nodiscard]] bool is_classical(const Circuit& c);

/// H inserted at the start and end of every X-tagged wire; the closing H goes
/// before the wire's measurement when there is one.
[[nodiscard]] Circuit conjugate_by_frame(const Circuit& c, const Frame& f);

/// True when a classical-up-to-Z circuit, run between H layers of the frame,
/// maps computational basis states to product states: no X-family gate has a
/// control in the X frame and target in the Z frame, and at most one
/// X-framed control when the target is X-framed. SWAP exchanges tags.
[[nodiscard]] bool frame_aligned(const Circuit& reduced, const Frame& f);

[[nodiscard]] FamilyVerdict classify(const Circuit& c);

/// Re-derives the verdict's witness from scratch.
[[nodiscard]] bool recheck_witness(const Circuit& c, const FamilyVerdict& v);

/// Entanglement entropy in ebits across the cut (`side` | rest) of the
/// stabilizer state c|input>. Throws NonCliffordError for non-Clifford gates
/// and ValidationError for a malformed cut.
[[nodiscard]] int entanglement_rank(const Circuit& c, std::string_view input, const std::vector<int>& side);

}  // namespace cliffrw::taxonomy

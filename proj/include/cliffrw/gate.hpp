#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cliffrw {

enum class GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    CX,
    CZ,
    SWAP,
    MCX,
    MCZ,
    CCX,
    CCZ,
    Barrier,
    Measure,
};

[[nodiscard]] std::string_view to_string(GateKind kind) noexcept;

/// A control (or phase-gate participant) on one wire. Open controls fire on |0>.
struct Control {
    int wire = 0;
    bool open = false;

    friend auto operator<=>(const Control&, const Control&) = default;
};

/// One circuit element.
///
/// Gates are built through the static factories, which canonicalize the
/// representation:
///  - the X family (X, CX, CCX, MCX) is selected by control count, controls
///    sorted by wire;
///  - the phase family (Z, CZ, CCZ, MCZ) is symmetric in its participants, so
///    participants are sorted and the highest closed participant becomes the
///    target; a phase gate must keep at least one closed participant;
///  - SWAP targets are sorted.
/// Two gates that act identically on the same wires therefore compare equal.
class Gate {
public:
    static Gate single(GateKind kind, int wire);
    static Gate x_family(std::vector<Control> controls, int target);
    static Gate phase(std::vector<Control> participants);
    static Gate swap(int a, int b);
    static Gate barrier();
    static Gate measure(int wire, int bit);

    static Gate i(int q) { return single(GateKind::I, q); }
    static Gate x(int q) { return single(GateKind::X, q); }
    static Gate y(int q) { return single(GateKind::Y, q); }
    static Gate z(int q) { return single(GateKind::Z, q); }
    static Gate h(int q) { return single(GateKind::H, q); }
    static Gate s(int q) { return single(GateKind::S, q); }
    static Gate sdg(int q) { return single(GateKind::Sdg, q); }
    static Gate cx(int control, int target) { return x_family({{control, false}}, target); }
    static Gate cz(int a, int b) { return phase({{a, false}, {b, false}}); }
    static Gate ccx(int c0, int c1, int target) { return x_family({{c0, false}, {c1, false}}, target); }
    static Gate ccz(int a, int b, int c) { return phase({{a, false}, {b, false}, {c, false}}); }

    [[nodiscard]] GateKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<Control>& controls() const noexcept { return controls_; }
    [[nodiscard]] const std::vector<int>& targets() const noexcept { return targets_; }
    [[nodiscard]] std::optional<int> bit() const noexcept { return bit_; }

    [[nodiscard]] bool is_x_family() const noexcept;
    [[nodiscard]] bool is_phase_family() const noexcept;
    /// Z-basis diagonal unitary (phase family, S, Sdg, I).
    [[nodiscard]] bool is_diagonal() const noexcept;
    [[nodiscard]] bool is_barrier() const noexcept { return kind_ == GateKind::Barrier; }
    [[nodiscard]] bool is_measure() const noexcept { return kind_ == GateKind::Measure; }
    [[nodiscard]] bool is_unitary() const noexcept { return !is_barrier() && !is_measure(); }
    /// Single-qubit gate without controls (I, X, Y, Z, H, S, Sdg).
    [[nodiscard]] bool is_single_qubit() const noexcept;
    [[nodiscard]] bool has_open_control() const noexcept;

    /// All phase-gate participants with polarity, sorted by wire. Only for the phase family.
    [[nodiscard]] std::vector<Control> participants() const;
    /// Sorted wire set touched by the gate (empty for barriers).
    [[nodiscard]] std::vector<int> wires() const;
    [[nodiscard]] bool touches(int wire) const noexcept;
    [[nodiscard]] int arity() const noexcept;

    /// Single-line description such as "cx q0 q1" (the CQC spelling).
    [[nodiscard]] std::string to_cqc() const;

    friend bool operator==(const Gate&, const Gate&) = default;

private:
    Gate() = default;

    GateKind kind_ = GateKind::I;
    std::vector<Control> controls_;
    std::vector<int> targets_;
    std::optional<int> bit_;
};

}  // namespace cliffrw

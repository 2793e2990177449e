#include "cliffrw/gate.hpp"

#include <algorithm>

#include "cliffrw/error.hpp"

namespace cliffrw {

std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::I: return "I";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "Sdg";
        case GateKind::CX: return "CX";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::MCX: return "MCX";
        case GateKind::MCZ: return "MCZ";
        case GateKind::CCX: return "CCX";
        case GateKind::CCZ: return "CCZ";
        case GateKind::Barrier: return "BARRIER";
        case GateKind::Measure: return "MEASURE";
    }
    return "?";
}

namespace {

void require_wire(int wire) {
    if (wire < 0) {
        throw ValidationError("negative wire index " + std::to_string(wire));
    }
}

void require_distinct(std::vector<int> wires) {
    std::sort(wires.begin(), wires.end());
    if (std::adjacent_find(wires.begin(), wires.end()) != wires.end()) {
        throw ValidationError("gate wires must be distinct");
    }
}

std::string wire_name(const Control& c) {
    return (c.open ? "~q" : "q") + std::to_string(c.wire);
}

}  // namespace

Gate Gate::single(GateKind kind, int wire) {
    switch (kind) {
        case GateKind::I:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
            break;
        default:
            throw ValidationError("not a single-qubit kind: " + std::string(to_string(kind)));
    }
    require_wire(wire);
    Gate g;
    g.kind_ = kind;
    g.targets_ = {wire};
    return g;
}

Gate Gate::x_family(std::vector<Control> controls, int target) {
    require_wire(target);
    std::vector<int> all{target};
    for (const auto& c : controls) {
        require_wire(c.wire);
        all.push_back(c.wire);
    }
    require_distinct(all);
    std::sort(controls.begin(), controls.end());

    Gate g;
    switch (controls.size()) {
        case 0: g.kind_ = GateKind::X; break;
        case 1: g.kind_ = GateKind::CX; break;
        case 2: g.kind_ = GateKind::CCX; break;
        default: g.kind_ = GateKind::MCX; break;
    }
    g.controls_ = std::move(controls);
    g.targets_ = {target};
    return g;
}

Gate Gate::phase(std::vector<Control> participants) {
    if (participants.empty()) {
        throw ValidationError("phase gate needs at least one wire");
    }
    std::vector<int> all;
    for (const auto& c : participants) {
        require_wire(c.wire);
        all.push_back(c.wire);
    }
    require_distinct(all);
    std::sort(participants.begin(), participants.end());

    auto closed = std::find_if(participants.rbegin(), participants.rend(), [](const Control& c) { return !c.open; });
    if (closed == participants.rend()) {
        throw ValidationError("phase gate needs a closed participant");
    }
    const int target = closed->wire;

    Gate g;
    switch (participants.size()) {
        case 1: g.kind_ = GateKind::Z; break;
        case 2: g.kind_ = GateKind::CZ; break;
        case 3: g.kind_ = GateKind::CCZ; break;
        default: g.kind_ = GateKind::MCZ; break;
    }
    for (const auto& c : participants) {
        if (c.wire != target) {
            g.controls_.push_back(c);
        }
    }
    g.targets_ = {target};
    return g;
}

Gate Gate::swap(int a, int b) {
    require_wire(a);
    require_wire(b);
    require_distinct({a, b});
    Gate g;
    g.kind_ = GateKind::SWAP;
    g.targets_ = {std::min(a, b), std::max(a, b)};
    return g;
}

Gate Gate::barrier() {
    Gate g;
    g.kind_ = GateKind::Barrier;
    return g;
}

Gate Gate::measure(int wire, int bit) {
    require_wire(wire);
    if (bit < 0) {
        throw ValidationError("negative classical bit index " + std::to_string(bit));
    }
    Gate g;
    g.kind_ = GateKind::Measure;
    g.targets_ = {wire};
    g.bit_ = bit;
    return g;
}

bool Gate::is_x_family() const noexcept {
    return kind_ == GateKind::X || kind_ == GateKind::CX || kind_ == GateKind::CCX || kind_ == GateKind::MCX;
}

bool Gate::is_phase_family() const noexcept {
    return kind_ == GateKind::Z || kind_ == GateKind::CZ || kind_ == GateKind::CCZ || kind_ == GateKind::MCZ;
}

bool Gate::is_diagonal() const noexcept {
    return is_phase_family() || kind_ == GateKind::S || kind_ == GateKind::Sdg || kind_ == GateKind::I;
}

bool Gate::is_single_qubit() const noexcept {
    switch (kind_) {
        case GateKind::I:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
            return controls_.empty();
        default:
            return false;
    }
}

bool Gate::has_open_control() const noexcept {
    return std::any_of(controls_.begin(), controls_.end(), [](const Control& c) { return c.open; });
}

std::vector<Control> Gate::participants() const {
    if (!is_phase_family()) {
        throw ValidationError("participants() is only defined for phase gates");
    }
    std::vector<Control> out = controls_;
    out.push_back({targets_.front(), false});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Gate::wires() const {
    std::vector<int> out;
    out.reserve(controls_.size() + targets_.size());
    for (const auto& c : controls_) {
        out.push_back(c.wire);
    }
    out.insert(out.end(), targets_.begin(), targets_.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool Gate::touches(int wire) const noexcept {
    if (std::find(targets_.begin(), targets_.end(), wire) != targets_.end()) {
        return true;
    }
    return std::any_of(controls_.begin(), controls_.end(), [wire](const Control& c) { return c.wire == wire; });
}

int Gate::arity() const noexcept {
    return static_cast<int>(controls_.size() + targets_.size());
}

std::string Gate::to_cqc() const {
    auto q = [](int w) { return "q" + std::to_string(w); };
    switch (kind_) {
        case GateKind::I: return "i " + q(targets_[0]);
        case GateKind::X: return "x " + q(targets_[0]);
        case GateKind::Y: return "y " + q(targets_[0]);
        case GateKind::Z: return "z " + q(targets_[0]);
        case GateKind::H: return "h " + q(targets_[0]);
        case GateKind::S: return "s " + q(targets_[0]);
        case GateKind::Sdg: return "sdg " + q(targets_[0]);
        case GateKind::SWAP: return "swap " + q(targets_[0]) + " " + q(targets_[1]);
        case GateKind::Barrier: return "barrier";
        case GateKind::Measure: return "measure " + q(targets_[0]) + " -> c" + std::to_string(*bit_);
        case GateKind::CX:
            if (!controls_[0].open) {
                return "cx " + q(controls_[0].wire) + " " + q(targets_[0]);
            }
            [[fallthrough]];
        case GateKind::CCX:
        case GateKind::MCX: {
            std::string out = "mcx";
            for (const auto& c : controls_) {
                out += " " + wire_name(c);
            }
            return out + " -> " + q(targets_[0]);
        }
        case GateKind::CZ:
            if (!controls_[0].open) {
                return "cz " + q(controls_[0].wire) + " " + q(targets_[0]);
            }
            [[fallthrough]];
        case GateKind::CCZ:
        case GateKind::MCZ: {
            std::string out = "mcz";
            for (const auto& c : participants()) {
                out += " " + wire_name(c);
            }
            return out;
        }
    }
    return {};
}

}  // namespace cliffrw

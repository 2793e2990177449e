#include "cliffrw/rewrite/derivation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "cliffrw/error.hpp"
#include "cliffrw/sim/unitary.hpp"

namespace cliffrw::rewrite {
namespace {

constexpr std::string_view kHeader = "derivation v1";

std::string sanitize_label(std::string_view label) {
    std::string out;
    for (char ch : label) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                        ch == '_' || ch == '.' || ch == '-';
        if (ok) {
            out += ch;
        }
    }
    return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out + "]";
}

void emit_snapshot(std::ostringstream& out, const Circuit& c) {
    std::istringstream lines(emit_circuit(c));
    std::string line;
    while (std::getline(lines, line)) {
        out << "  " << line << '\n';
    }
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError(static_cast<int>(line), 1, msg);
}

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(line, "malformed number '" + std::string(s) + "'");
    }
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view s, std::size_t line) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        fail(line, "malformed list '" + std::string(s) + "'");
    }
    s = s.substr(1, s.size() - 2);
    std::vector<T> out;
    while (!s.empty()) {
        auto comma = s.find(',');
        out.push_back(parse_number<T>(s.substr(0, comma), line));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

struct Block {
    std::string head;
    std::size_t line = 0;
    std::string body;
};

}  // namespace

std::string_view to_string(StepCheck check) noexcept {
    switch (check) {
        case StepCheck::Unchecked: return "unchecked";
        case StepCheck::Verified: return "verified";
        case StepCheck::Skipped: return "skipped";
        case StepCheck::Failed: return "failed";
    }
    return "unchecked";
}

Derivation::Derivation(Circuit initial) : initial_(std::move(initial)) {}

const Circuit& Derivation::current() const noexcept {
    return steps_.empty() ? initial_ : steps_.back().snapshot;
}

const Circuit& Derivation::snapshot(std::size_t k) const {
    if (k > steps_.size()) {
        throw std::out_of_range("snapshot index " + std::to_string(k) + " past " + std::to_string(steps_.size()));
    }
    return k == 0 ? initial_ : steps_[k - 1].snapshot;
}

const Circuit& Derivation::apply(Match m, std::string label) {
    m.revision = current().revision();
    Circuit next = apply_rule(current(), m);
    steps_.push_back({std::move(m), std::move(next), StepCheck::Unchecked, std::move(label)});
    return steps_.back().snapshot;
}

void Derivation::label_current(std::string label) {
    if (steps_.empty()) {
        initial_label_ = std::move(label);
    } else {
        steps_.back().label = std::move(label);
    }
}

void Derivation::undo() {
    if (steps_.empty()) {
        throw std::logic_error("nothing to undo");
    }
    steps_.pop_back();
}

std::vector<std::size_t> Derivation::milestones() const {
    std::vector<std::size_t> out;
    if (!initial_label_.empty()) out.push_back(0);
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        if (!steps_[k].label.empty()) out.push_back(k + 1);
    }
    return out;
}

bool Derivation::verify(double tol) {
    bool ok = true;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        auto& step = steps_[k];
        if (step.check == StepCheck::Unchecked) {
            step.check = verify_step(snapshot(k), step.snapshot, step.match, tol);
        }
        ok = ok && step.check != StepCheck::Failed;
    }
    return ok;
}

bool Derivation::all_verified() const noexcept {
    return std::all_of(steps_.begin(), steps_.end(),
                       [](const DerivationStep& s) { return s.check == StepCheck::Verified; });
}

void Derivation::push_step(DerivationStep step) { steps_.push_back(std::move(step)); }

StepCheck verify_step(const Circuit& before, const Circuit& after, const Match& m, double tol) {
    if (before.num_qubits() != after.num_qubits()) {
        return StepCheck::Failed;
    }
    if (before.num_qubits() > sim::kMaxUnitaryQubits) {
        return StepCheck::Skipped;
    }
    const Circuit a = before.without_measurements();
    const Circuit b = after.without_measurements();
    const std::uint64_t mask = input_constraint_mask(m);
    const auto report = mask ? sim::equivalent_on_inputs(a, b, mask, 0, tol) : sim::equivalent_up_to_phase(a, b, tol);
    return report.equivalent ? StepCheck::Verified : StepCheck::Failed;
}

std::string serialize(const Derivation& d) {
    std::ostringstream out;
    out << kHeader << '\n';
    const std::string initial_label = sanitize_label(d.initial_label());
    out << "initial label=" << (initial_label.empty() ? "-" : initial_label) << " -> "
        << circuit_hash(d.initial()) << '\n';
    emit_snapshot(out, d.initial());
    for (std::size_t k = 0; k < d.size(); ++k) {
        const auto& step = d.steps()[k];
        const Match& m = step.match;
        const std::string label = sanitize_label(step.label);
        out << "step " << k + 1 << ": rule=" << to_string(m.rule) << " at=" << join(m.gate_indices)
            << " dir=" << to_string(m.direction) << " pos=" << m.position << " wires=" << join(m.wires)
            << " policy=" << to_string(m.policy) << " check=" << to_string(step.check)
            << " label=" << (label.empty() ? "-" : label) << " -> " << circuit_hash(step.snapshot) << '\n';
        emit_snapshot(out, step.snapshot);
    }
    return out.str();
}

Derivation parse_derivation(std::string_view text) {
    std::vector<Block> blocks;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (!saw_header) {
            if (line != kHeader) fail(line_no, "expected '" + std::string(kHeader) + "'");
            saw_header = true;
        } else if (line.starts_with("  ")) {
            if (blocks.empty()) fail(line_no, "snapshot line before any step");
            blocks.back().body += std::string(line.substr(2)) + '\n';
        } else {
            blocks.push_back({std::string(line), line_no, {}});
        }
        if (end == text.size()) break;
    }
    if (!saw_header) fail(line_no == 0 ? 1 : line_no, "empty derivation");
    if (blocks.empty() || !blocks.front().head.starts_with("initial ")) {
        fail(blocks.empty() ? line_no : blocks.front().line, "expected 'initial' line");
    }

    auto read_snapshot = [](const Block& b, std::string_view expected_hash, std::uint64_t revision) {
        Circuit c = parse_circuit(b.body).with_revision(revision);
        if (circuit_hash(c) != expected_hash) {
            fail(b.line, "snapshot hash mismatch: recorded " + std::string(expected_hash) + ", computed " +
                             circuit_hash(c));
        }
        return c;
    };

    auto fields_of = [](const Block& b, std::string_view& hash) {
        auto tokens = split_ws(b.head);
        if (tokens.size() < 2 || tokens[tokens.size() - 2] != "->") {
            fail(b.line, "missing '-> <hash>'");
        }
        hash = tokens.back();
        tokens.resize(tokens.size() - 2);
        return tokens;
    };

    std::string_view hash;
    auto init_tokens = fields_of(blocks.front(), hash);
    Derivation d(read_snapshot(blocks.front(), hash, 0));
    for (auto tok : init_tokens) {
        if (tok.starts_with("label=") && tok != "label=-") d.label_current(std::string(tok.substr(6)));
    }

    for (std::size_t bi = 1; bi < blocks.size(); ++bi) {
        const Block& b = blocks[bi];
        auto tokens = fields_of(b, hash);
        if (tokens.size() < 2 || tokens[0] != "step" || tokens[1] != std::to_string(bi) + ":") {
            fail(b.line, "expected 'step " + std::to_string(bi) + ":'");
        }
        DerivationStep step{Match{}, Circuit(1), StepCheck::Unchecked, {}};
        bool have_rule = false;
        for (std::size_t t = 2; t < tokens.size(); ++t) {
            auto eq = tokens[t].find('=');
            if (eq == std::string_view::npos) fail(b.line, "malformed field '" + std::string(tokens[t]) + "'");
            auto key = tokens[t].substr(0, eq);
            auto value = tokens[t].substr(eq + 1);
            if (key == "rule") {
                auto r = rule_from_string(value);
                if (!r) fail(b.line, "unknown rule '" + std::string(value) + "'");
                step.match.rule = *r;
                have_rule = true;
            } else if (key == "at") {
                step.match.gate_indices = parse_list<std::size_t>(value, b.line);
            } else if (key == "dir") {
                auto dir = direction_from_string(value);
                if (!dir) fail(b.line, "unknown direction '" + std::string(value) + "'");
                step.match.direction = *dir;
            } else if (key == "pos") {
                step.match.position = parse_number<std::size_t>(value, b.line);
            } else if (key == "wires") {
                step.match.wires = parse_list<int>(value, b.line);
            } else if (key == "policy") {
                auto p = policy_from_string(value);
                if (!p) fail(b.line, "unknown barrier policy '" + std::string(value) + "'");
                step.match.policy = *p;
            } else if (key == "check") {
                if (value == "verified") step.check = StepCheck::Verified;
                else if (value == "skipped") step.check = StepCheck::Skipped;
                else if (value == "failed") step.check = StepCheck::Failed;
                else if (value != "unchecked") fail(b.line, "unknown check '" + std::string(value) + "'");
            } else if (key == "label") {
                if (value != "-") step.label = std::string(value);
            } else {
                fail(b.line, "unknown field '" + std::string(key) + "'");
            }
        }
        if (!have_rule) fail(b.line, "step without rule");
        step.match.revision = bi - 1;
        step.snapshot = read_snapshot(b, hash, bi);
        d.push_step(std::move(step));
    }
    return d;
}

std::size_t replay_mismatch(const Derivation& d) {
    Circuit c = d.initial();
    for (std::size_t k = 0; k < d.size(); ++k) {
        Match m = d.steps()[k].match;
        m.revision = c.revision();
        try {
            c = apply_rule(c, m);
        } catch (const Error&) {
            return k + 1;
        }
        if (!(c == d.steps()[k].snapshot)) {
            return k + 1;
        }
    }
    return 0;
}

}  // namespace cliffrw::rewrite

// CQC text parser. One statement per line, '#' starts a comment.

#include <cctype>
#include <charconv>
#include <optional>

#include "cliffrw/circuit.hpp"
#include "cliffrw/error.hpp"

namespace cliffrw {
namespace {

struct Token {
    std::string_view text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        if (line.compare(i, 2, "->") == 0) {
            j = i + 2;
        } else {
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
                   line.compare(j, 2, "->") != 0) {
                ++j;
            }
        }
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

class LineParser {
public:
    LineParser(int line_no, std::vector<Token> tokens) : line_(line_no), tokens_(std::move(tokens)) {}

    [[noreturn]] void fail(int column, const std::string& msg) const { throw ParseError(line_, column, msg); }

    [[nodiscard]] bool done() const { return pos_ >= tokens_.size(); }
    [[nodiscard]] int column() const { return done() ? end_column() : tokens_[pos_].column; }

    const Token& next(const char* what) {
        if (done()) {
            fail(end_column(), std::string("expected ") + what);
        }
        return tokens_[pos_++];
    }

    int number(const char* what) {
        const auto& t = next(what);
        int value = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || p != t.text.data() + t.text.size() || value < 0) {
            fail(t.column, std::string("expected ") + what + ", got '" + std::string(t.text) + "'");
        }
        return value;
    }

    int indexed(char prefix, const Token& t, const char* what) const {
        if (t.text.size() < 2 || t.text[0] != prefix) {
            fail(t.column, std::string("expected ") + what + ", got '" + std::string(t.text) + "'");
        }
        int value = 0;
        auto body = t.text.substr(1);
        auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
        if (ec != std::errc{} || p != body.data() + body.size()) {
            fail(t.column, std::string("malformed ") + what + " '" + std::string(t.text) + "'");
        }
        return value;
    }

    int wire() { return indexed('q', next("qubit"), "qubit"); }

    Control control() {
        const auto& t = next("qubit");
        if (!t.text.empty() && t.text[0] == '~') {
            Token rest{t.text.substr(1), t.column + 1};
            return {indexed('q', rest, "qubit"), true};
        }
        return {indexed('q', t, "qubit"), false};
    }

    void arrow() {
        const auto& t = next("'->'");
        if (t.text != "->") {
            fail(t.column, "expected '->', got '" + std::string(t.text) + "'");
        }
    }

    void finish() const {
        if (!done()) {
            fail(tokens_[pos_].column, "unexpected token '" + std::string(tokens_[pos_].text) + "'");
        }
    }

    [[nodiscard]] bool peek_arrow() const { return !done() && tokens_[pos_].text == "->"; }

private:
    [[nodiscard]] int end_column() const {
        return tokens_.empty() ? 1 : tokens_.back().column + static_cast<int>(tokens_.back().text.size());
    }

    int line_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::optional<GateKind> single_kind(std::string_view name) {
    if (name == "i" || name == "id") return GateKind::I;
    if (name == "x") return GateKind::X;
    if (name == "y") return GateKind::Y;
    if (name == "z") return GateKind::Z;
    if (name == "h") return GateKind::H;
    if (name == "s") return GateKind::S;
    if (name == "sdg") return GateKind::Sdg;
    return std::nullopt;
}

Gate parse_gate(LineParser& p, std::string_view name, int name_column) {
    if (auto kind = single_kind(name)) {
        return Gate::single(*kind, p.wire());
    }
    if (name == "cx") {
        Control c = p.control();
        int t = p.wire();
        return Gate::x_family({c}, t);
    }
    if (name == "cz") {
        Control a = p.control();
        Control b = p.control();
        return Gate::phase({a, b});
    }
    if (name == "ccx") {
        Control a = p.control();
        Control b = p.control();
        int t = p.wire();
        return Gate::x_family({a, b}, t);
    }
    if (name == "ccz") {
        Control a = p.control();
        Control b = p.control();
        Control c = p.control();
        return Gate::phase({a, b, c});
    }
    if (name == "swap") {
        int a = p.wire();
        int b = p.wire();
        return Gate::swap(a, b);
    }
    if (name == "mcx") {
        std::vector<Control> controls;
        while (!p.peek_arrow()) {
            controls.push_back(p.control());
        }
        p.arrow();
        int t = p.wire();
        if (controls.empty()) {
            p.fail(name_column, "mcx needs at least one control");
        }
        return Gate::x_family(std::move(controls), t);
    }
    if (name == "mcz") {
        std::vector<Control> parts;
        while (!p.done()) {
            parts.push_back(p.control());
        }
        if (parts.size() < 2) {
            p.fail(name_column, "mcz needs at least two qubits");
        }
        return Gate::phase(std::move(parts));
    }
    if (name == "barrier") {
        return Gate::barrier();
    }
    if (name == "measure") {
        int q = p.wire();
        p.arrow();
        const auto& t = p.next("classical bit");
        return Gate::measure(q, p.indexed('c', t, "classical bit"));
    }
    p.fail(name_column, "unknown gate '" + std::string(name) + "'");
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::optional<Circuit> circuit;
    int qubits = -1;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        auto tokens = tokenize(line);
        if (tokens.empty()) {
            if (end == text.size()) break;
            continue;
        }
        LineParser p(line_no, tokens);
        const auto head = p.next("statement");

        if (head.text == "qubits") {
            if (qubits >= 0) {
                p.fail(head.column, "duplicate 'qubits' header");
            }
            qubits = p.number("qubit count");
            p.finish();
            if (qubits < 1) {
                p.fail(head.column, "qubit count must be positive");
            }
            circuit.emplace(qubits, 0);
        } else if (head.text == "bits") {
            if (!circuit || !circuit->empty() || circuit->num_bits() != 0) {
                p.fail(head.column, "'bits' must directly follow the 'qubits' header");
            }
            int bits = p.number("bit count");
            p.finish();
            circuit.emplace(qubits, bits);
        } else {
            if (!circuit) {
                p.fail(head.column, "missing 'qubits N' header");
            }
            Gate gate = [&] {
                try {
                    return parse_gate(p, head.text, head.column);
                } catch (const ValidationError& e) {
                    p.fail(head.column, e.what());
                }
            }();
            p.finish();
            try {
                circuit->append(std::move(gate));
            } catch (const ValidationError& e) {
                p.fail(head.column, e.what());
            }
        }
        if (end == text.size()) break;
    }
    if (!circuit) {
        throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'qubits N' header");
    }
    return *circuit;
}

}  // namespace cliffrw

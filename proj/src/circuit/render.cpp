#include "cliffrw/render.hpp"

#include <algorithm>
#include <sstream>

namespace cliffrw {
namespace {

std::pair<int, int> span_of(const Gate& g, int num_qubits) {
    if (g.is_barrier()) {
        return {0, num_qubits - 1};
    }
    auto w = g.wires();
    return {w.front(), w.back()};
}

std::string box_label(const Gate& g) {
    switch (g.kind()) {
        case GateKind::I: return "[I]";
        case GateKind::X: return "[X]";
        case GateKind::Y: return "[Y]";
        case GateKind::Z: return "[Z]";
        case GateKind::H: return "[H]";
        case GateKind::S: return "[S]";
        case GateKind::Sdg: return "[Sdg]";
        case GateKind::Measure: return "[M:c" + std::to_string(*g.bit()) + "]";
        default: return "";
    }
}

/// Symbol drawn on `wire` for `g`, or empty when the wire is only crossed.
std::string symbol_on(const Gate& g, int wire) {
    if (g.is_barrier()) {
        return "|";
    }
    if (g.kind() == GateKind::SWAP) {
        return g.touches(wire) ? "x" : "";
    }
    for (const auto& c : g.controls()) {
        if (c.wire == wire) {
            return c.open ? "o" : "*";
        }
    }
    if (g.targets().front() == wire) {
        if (g.is_phase_family() && g.arity() > 1) {
            return "*";
        }
        if (g.is_x_family() && !g.controls().empty()) {
            return "(+)";
        }
        return box_label(g);
    }
    return "";
}

std::string center(const std::string& s, std::size_t width, char fill) {
    std::size_t left = (width - s.size()) / 2;
    std::size_t right = width - s.size() - left;
    return std::string(left, fill) + s + std::string(right, fill);
}

std::string render_ascii(const Circuit& c) {
    const int n = c.num_qubits();
    const auto cols = layout_columns(c);
    const int num_cols = cols.empty() ? 0 : *std::max_element(cols.begin(), cols.end()) + 1;

    // cells[row][col]; even rows are wires, odd rows the gaps between them.
    const int rows = 2 * n - 1;
    std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(num_cols));
    std::vector<std::vector<bool>> crossed(rows, std::vector<bool>(num_cols, false));
    std::vector<std::size_t> width(num_cols, 1);

    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c[i];
        const int col = cols[i];
        auto [lo, hi] = span_of(g, n);
        for (int w = lo; w <= hi; ++w) {
            std::string sym = symbol_on(g, w);
            if (sym.empty()) {
                crossed[2 * w][col] = true;
                sym = "|";
            }
            cells[2 * w][col] = sym;
            width[col] = std::max(width[col], sym.size());
            if (w < hi) {
                cells[2 * w + 1][col] = g.is_barrier() ? "|" : "|";
            }
        }
    }

    std::vector<std::string> label(rows);
    std::size_t label_width = 0;
    for (int w = 0; w < n; ++w) {
        label[2 * w] = "q" + std::to_string(w) + ": ";
        label_width = std::max(label_width, label[2 * w].size());
    }

    std::ostringstream out;
    for (int r = 0; r < rows; ++r) {
        const bool wire_row = r % 2 == 0;
        std::string line = label[r] + std::string(label_width - label[r].size(), ' ');
        line += wire_row ? "-" : " ";
        for (int col = 0; col < num_cols; ++col) {
            const char fill = wire_row ? '-' : ' ';
            line += center(cells[r][col], width[col] + 2, fill);
            line += fill;
        }
        while (!wire_row && !line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out << line << '\n';
    }
    return out.str();
}

constexpr int kColWidth = 48;
constexpr int kRowHeight = 40;
constexpr int kLeft = 56;
constexpr int kTop = 28;

int wire_y(int w) { return kTop + w * kRowHeight; }
int col_x(int col) { return kLeft + col * kColWidth + kColWidth / 2; }

std::string svg_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
        }
    }
    return out;
}

void svg_box(std::ostringstream& out, int x, int y, const std::string& text) {
    const int w = std::max(24, static_cast<int>(text.size()) * 8 + 8);
    out << "    <rect x=\"" << x - w / 2 << "\" y=\"" << y - 12 << "\" width=\"" << w
        << "\" height=\"24\" fill=\"white\" stroke=\"black\"/>\n";
    out << "    <text x=\"" << x << "\" y=\"" << y + 5 << "\" text-anchor=\"middle\" font-family=\"monospace\" "
        << "font-size=\"13\">" << svg_escape(text) << "</text>\n";
}

void svg_dot(std::ostringstream& out, int x, int y, bool open) {
    out << "    <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"" << (open ? "white" : "black")
        << "\" stroke=\"black\"/>\n";
}

std::string render_svg(const Circuit& c) {
    const int n = c.num_qubits();
    const auto cols = layout_columns(c);
    const int num_cols = cols.empty() ? 0 : *std::max_element(cols.begin(), cols.end()) + 1;
    const int width = kLeft + std::max(1, num_cols) * kColWidth + 16;
    const int height = kTop + (n - 1) * kRowHeight + 28;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <g class=\"wires\">\n";
    for (int w = 0; w < n; ++w) {
        out << "    <text x=\"8\" y=\"" << wire_y(w) + 5 << "\" font-family=\"monospace\" font-size=\"13\">q" << w
            << "</text>\n";
        out << "    <line x1=\"" << kLeft - 16 << "\" y1=\"" << wire_y(w) << "\" x2=\"" << width - 8 << "\" y2=\""
            << wire_y(w) << "\" stroke=\"black\"/>\n";
    }
    out << "  </g>\n";

    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c[i];
        const int x = col_x(cols[i]);
        out << "  <g class=\"gate\" data-index=\"" << i << "\" data-kind=\"" << to_string(g.kind()) << "\">\n";
        if (g.is_barrier()) {
            out << "    <line x1=\"" << x << "\" y1=\"" << kTop - 14 << "\" x2=\"" << x << "\" y2=\""
                << wire_y(n - 1) + 14 << "\" stroke=\"gray\" stroke-dasharray=\"4,3\"/>\n";
            out << "  </g>\n";
            continue;
        }
        auto [lo, hi] = span_of(g, n);
        if (hi > lo) {
            out << "    <line x1=\"" << x << "\" y1=\"" << wire_y(lo) << "\" x2=\"" << x << "\" y2=\"" << wire_y(hi)
                << "\" stroke=\"black\"/>\n";
        }
        for (int w : g.wires()) {
            const std::string sym = symbol_on(g, w);
            const int y = wire_y(w);
            if (sym == "*" || sym == "o") {
                svg_dot(out, x, y, sym == "o");
            } else if (sym == "(+)") {
                out << "    <circle cx=\"" << x << "\" cy=\"" << y
                    << "\" r=\"10\" fill=\"white\" stroke=\"black\"/>\n";
                out << "    <line x1=\"" << x - 10 << "\" y1=\"" << y << "\" x2=\"" << x + 10 << "\" y2=\"" << y
                    << "\" stroke=\"black\"/>\n";
                out << "    <line x1=\"" << x << "\" y1=\"" << y - 10 << "\" x2=\"" << x << "\" y2=\"" << y + 10
                    << "\" stroke=\"black\"/>\n";
            } else if (sym == "x") {
                out << "    <path d=\"M" << x - 6 << " " << y - 6 << " L" << x + 6 << " " << y + 6 << " M" << x + 6
                    << " " << y - 6 << " L" << x - 6 << " " << y + 6 << "\" stroke=\"black\"/>\n";
            } else {
                std::string text = sym.substr(1, sym.size() - 2);
                svg_box(out, x, y, text);
            }
        }
        out << "  </g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::vector<int> layout_columns(const Circuit& circuit) {
    const int n = circuit.num_qubits();
    std::vector<int> frontier(n, 0);
    std::vector<int> cols;
    cols.reserve(circuit.size());
    for (const auto& g : circuit.gates()) {
        auto [lo, hi] = span_of(g, n);
        int col = *std::max_element(frontier.begin() + lo, frontier.begin() + hi + 1);
        cols.push_back(col);
        std::fill(frontier.begin() + lo, frontier.begin() + hi + 1, col + 1);
    }
    return cols;
}

Diagram render(const Circuit& circuit, DiagramFormat format) {
    if (format == DiagramFormat::Svg) {
        return {format, render_svg(circuit)};
    }
    return {format, render_ascii(circuit)};
}

}  // namespace cliffrw

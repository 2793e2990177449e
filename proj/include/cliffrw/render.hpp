#pragma once

#include <string>

#include "cliffrw/circuit.hpp"

namespace cliffrw {

enum class DiagramFormat { Ascii, Svg };

struct Diagram {
    DiagramFormat format = DiagramFormat::Ascii;
    std::string payload;
};

/// Deterministic diagram. Gates are packed into columns left to right; a
/// barrier always opens a fresh column and spans every wire.
[[nodiscard]] Diagram render(const Circuit& circuit, DiagramFormat format);

/// Column index assigned to each gate by the layout.
[[nodiscard]] std::vector<int> layout_columns(const Circuit& circuit);

}  // namespace cliffrw

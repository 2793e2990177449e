#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "cliffrw/rewrite/rules.hpp"

namespace cliffrw::rewrite::detail {

using Gates = std::vector<Gate>;

/// Next gate after `i` touching `w`; an opaque barrier in between ends the search.
std::optional<std::size_t> next_on_wire(const Gates& g, std::size_t i, int w, BarrierPolicy policy);
std::optional<std::size_t> prev_on_wire(const Gates& g, std::size_t i, int w, BarrierPolicy policy);
/// Next gate after `i` touching any of `wires`.
std::optional<std::size_t> next_touching(const Gates& g, std::size_t i, const std::vector<int>& wires,
                                         BarrierPolicy policy);

/// True when a MEASURE on `w` occurs before index `pos`.
bool measured_before(const Gates& g, std::size_t pos, int w);

/// Copy of `g` without the gates in `remove`, with `insert` placed where
/// original index `insert_at` stood (== g.size() appends).
Gates splice(const Gates& g, const std::set<std::size_t>& remove, std::size_t insert_at, const Gates& insert);

Match make_match(RuleId rule, Direction dir, std::vector<std::size_t> indices, std::vector<int> wires,
                 std::size_t position = 0);

std::vector<Control> participants_without(const Gate& g, int wire);
std::optional<Control> participant_on(const Gate& g, int wire);

using FindFn = std::function<std::vector<Match>(const Circuit&, BarrierPolicy, Direction)>;
using RewriteFn = std::function<Gates(const Circuit&, const Match&)>;

struct RuleImpl {
    FindFn find;
    RewriteFn rewrite;
};

/// Implementation for one rule and direction.
RuleImpl rule_impl(RuleId rule, Direction dir);

// Per-family factories, defined in rules_local.cpp and rules_phase.cpp.
RuleImpl local_rule(RuleId rule, Direction dir);
RuleImpl phase_rule(RuleId rule, Direction dir);

/// Known Z-basis values per wire at each gate, assuming an all-zero input.
/// A value is tracked only while it depends on the wire's own input.
std::vector<std::vector<std::optional<int>>> known_basis_values(const Circuit& c);

}  // namespace cliffrw::rewrite::detail

namespace cliffrw::rewrite::detail {
std::vector<Gate> sever(const Circuit& c, int ancilla);
std::optional<int> merge_wire(const Gate& a, const Gate& b);
}  // namespace cliffrw::rewrite::detail

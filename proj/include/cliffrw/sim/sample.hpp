#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cliffrw/circuit.hpp"

namespace cliffrw::sim {

/// Result bitstring -> shot count. Keys have num_bits characters, bit m-1 leftmost.
using Counts = std::map<std::string, std::uint64_t>;
/// Result bitstring -> exact probability (entries below 1e-14 are dropped).
using Distribution = std::map<std::string, double>;

enum class Backend { Auto, StateVector, Tableau };

/// Renders the low `num_bits` bits of `value` with bit num_bits-1 leftmost.
[[nodiscard]] std::string format_bits(std::uint64_t value, int num_bits);

/// Exact Born distribution of the measured classical register. Auto uses the
/// tableau for Clifford circuits and the statevector otherwise.
[[nodiscard]] Distribution exact_distribution(const Circuit& c, Backend backend = Backend::Auto);

/// Seeded sampling; identical (circuit, shots, seed, backend) give identical counts.
[[nodiscard]] Counts sample(const Circuit& c, std::uint64_t shots, std::uint64_t seed,
                            Backend backend = Backend::Auto);

}  // namespace cliffrw::sim

#include "cliffrw/sim/sample.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "cliffrw/error.hpp"
#include "cliffrw/sim/statevector.hpp"
#include "cliffrw/sim/tableau.hpp"

namespace cliffrw::sim {
namespace {

constexpr double kDropBelow = 1e-14;
constexpr std::size_t kMaxBranches = std::size_t{1} << 16;

void require_measurements(const Circuit& c) {
    if (!c.has_measurements()) {
        throw ValidationError("circuit has no MEASURE gates");
    }
}

Distribution statevector_distribution(const Circuit& c) {
    const StateVector sv = statevector_run(c);
    std::vector<std::pair<int, int>> wire_bit;
    for (const auto& m : c.measurements()) {
        wire_bit.emplace_back(m.targets().front(), *m.bit());
    }
    std::map<std::uint64_t, double> acc;
    const auto amps = sv.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) {
            continue;
        }
        std::uint64_t bits = 0;
        for (auto [w, b] : wire_bit) {
            if ((i >> w) & 1U) {
                bits |= std::uint64_t{1} << b;
            } else {
                bits &= ~(std::uint64_t{1} << b);
            }
        }
        acc[bits] += p;
    }
    Distribution out;
    for (auto [bits, p] : acc) {
        if (p >= kDropBelow) {
            out[format_bits(bits, c.num_bits())] = p;
        }
    }
    return out;
}

struct Branch {
    Tableau tableau;
    double probability;
    std::uint64_t bits;
};

Distribution tableau_distribution(const Circuit& c) {
    std::vector<Branch> branches;
    branches.push_back({Tableau(c.num_qubits()), 1.0, 0});
    for (const auto& g : c.gates()) {
        if (!g.is_measure()) {
            for (auto& b : branches) {
                b.tableau.apply(g);
            }
            continue;
        }
        const int q = g.targets().front();
        const std::uint64_t bit = std::uint64_t{1} << *g.bit();
        std::vector<Branch> next;
        next.reserve(branches.size());
        for (auto& b : branches) {
            const int det = b.tableau.deterministic_outcome(q);
            if (det >= 0) {
                b.bits = det ? (b.bits | bit) : (b.bits & ~bit);
                next.push_back(std::move(b));
                continue;
            }
            Branch one = b;
            b.tableau.measure(q, nullptr, 0);
            b.probability *= 0.5;
            b.bits &= ~bit;
            one.tableau.measure(q, nullptr, 1);
            one.probability *= 0.5;
            one.bits |= bit;
            next.push_back(std::move(b));
            next.push_back(std::move(one));
        }
        if (next.size() > kMaxBranches) {
            throw SizeLimitError("too many random measurement outcomes for an exact distribution");
        }
        branches = std::move(next);
    }
    Distribution out;
    for (const auto& b : branches) {
        out[format_bits(b.bits, c.num_bits())] += b.probability;
    }
    return out;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Counts per_shot_tableau(const Circuit& c, std::uint64_t shots, std::mt19937_64& rng) {
    Counts counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        Tableau t(c.num_qubits());
        std::uint64_t bits = 0;
        for (const auto& g : c.gates()) {
            if (g.is_measure()) {
                const std::uint64_t bit = std::uint64_t{1} << *g.bit();
                bits = t.measure(g.targets().front(), &rng) ? (bits | bit) : (bits & ~bit);
            } else {
                t.apply(g);
            }
        }
        ++counts[format_bits(bits, c.num_bits())];
    }
    return counts;
}

}  // namespace

std::string format_bits(std::uint64_t value, int num_bits) {
    std::string s(static_cast<std::size_t>(num_bits), '0');
    for (int m = 0; m < num_bits; ++m) {
        if ((value >> m) & 1U) {
            s[static_cast<std::size_t>(num_bits - 1 - m)] = '1';
        }
    }
    return s;
}

Distribution exact_distribution(const Circuit& c, Backend backend) {
    require_measurements(c);
    if (backend == Backend::Auto) {
        backend = is_clifford(c) ? Backend::Tableau : Backend::StateVector;
    }
    return backend == Backend::Tableau ? tableau_distribution(c) : statevector_distribution(c);
}

Counts sample(const Circuit& c, std::uint64_t shots, std::uint64_t seed, Backend backend) {
    require_measurements(c);
    if (shots == 0) {
        throw ValidationError("shots must be at least 1");
    }
    if (backend == Backend::Auto) {
        backend = is_clifford(c) ? Backend::Tableau : Backend::StateVector;
    }
    std::mt19937_64 rng(seed);
    Distribution dist;
    try {
        dist = exact_distribution(c, backend);
    } catch (const SizeLimitError&) {
        if (backend != Backend::Tableau) {
            throw;
        }
        return per_shot_tableau(c, shots, rng);
    }
    std::vector<std::pair<std::string, double>> cdf;
    double total = 0.0;
    for (const auto& [key, p] : dist) {
        total += p;
        cdf.emplace_back(key, total);
    }
    Counts counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u,
                                   [](double v, const std::pair<std::string, double>& e) { return v < e.second; });
        if (it == cdf.end()) {
            --it;
        }
        ++counts[it->first];
    }
    return counts;
}

}  // namespace cliffrw::sim

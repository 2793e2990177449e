#include "cliffrw/taxonomy.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <thread>

#include "cliffrw/error.hpp"
#include "cliffrw/rewrite/normalize.hpp"
#include "cliffrw/sim/sample.hpp"
#include "cliffrw/sim/tableau.hpp"

namespace cliffrw::taxonomy {
namespace {

using rewrite::BarrierPolicy;
using rewrite::NormalizeOptions;
using rewrite::Strategy;

constexpr int kAllInputsLimit = 10;
constexpr int kAllCutsLimit = 12;

bool classical_gate(const Gate& g) {
    return g.is_x_family() || g.kind() == GateKind::SWAP || g.kind() == GateKind::I;
}

bool classical_up_to_z(const Circuit& c) {
    return std::all_of(c.gates().begin(), c.gates().end(), [](const Gate& g) {
        return !g.is_unitary() || classical_gate(g) || g.kind() == GateKind::Z;
    });
}

Circuit reduce(const Circuit& c, Strategy s) {
    NormalizeOptions opts;
    opts.policy = BarrierPolicy::Transparent;
    return rewrite::normalize(c, s, opts).circuit;
}

/// Reduced circuit when `f` is a Family II witness for `c`.
std::optional<Circuit> try_frame(const Circuit& c, const Frame& f) {
    try {
        Circuit r = reduce(conjugate_by_frame(c, f), Strategy::Full);
        if (classical_up_to_z(r) && frame_aligned(r, f)) return r;
    } catch (const BudgetExceededError&) {
    }
    return std::nullopt;
}

/// Candidate k of the exhaustive search: all-X first, then every mixed frame
/// by ascending bit mask (bit w set = X on wire w).
Frame candidate(int n, std::uint64_t k) {
    if (k == 0) return uniform_frame(n, Basis::X);
    Frame f(n);
    for (int w = 0; w < n; ++w) f[w] = ((k >> w) & 1U) ? Basis::X : Basis::Z;
    return f;
}

struct FrameHit {
    Frame frame;
    Circuit reduced;
};

std::optional<FrameHit> exhaustive_search(const Circuit& c) {
    const int n = c.num_qubits();
    // Masks 1 .. 2^n - 2 plus the all-X frame at index 0.
    const std::uint64_t count = (std::uint64_t{1} << n) - 1;
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    const unsigned workers = std::max(1U, std::min(std::thread::hardware_concurrency(), 8U));
    std::vector<std::optional<Circuit>> found(workers);
    std::vector<std::uint64_t> found_at(workers, std::numeric_limits<std::uint64_t>::max());
    auto work = [&](unsigned id) {
        for (std::uint64_t k = id; k < count; k += workers) {
            if (k > best.load()) return;
            if (auto r = try_frame(c, candidate(n, k))) {
                found[id] = std::move(r);
                found_at[id] = k;
                std::uint64_t cur = best.load();
                while (k < cur && !best.compare_exchange_weak(cur, k)) {
                }
                return;
            }
        }
    };
    if (count <= workers) {
        for (unsigned id = 0; id < workers; ++id) work(id);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
        for (auto& t : pool) t.join();
    }
    for (unsigned id = 0; id < workers; ++id) {
        if (found_at[id] == best.load() && found[id]) return FrameHit{candidate(n, found_at[id]), *found[id]};
    }
    return std::nullopt;
}

int non_classical_on(const Circuit& r, int w) {
    int count = 0;
    for (const auto& g : r.gates()) {
        if (g.is_unitary() && !classical_gate(g) && g.kind() != GateKind::Z && g.touches(w)) ++count;
    }
    return count;
}

std::optional<FrameHit> greedy_search(const Circuit& c) {
    const int n = c.num_qubits();
    Frame f = uniform_frame(n, Basis::X);
    if (auto r = try_frame(c, f)) return FrameHit{f, *r};
    f = uniform_frame(n, Basis::Z);
    for (int w = 0; w < n; ++w) {
        int score[2];
        for (Basis b : {Basis::Z, Basis::X}) {
            f[w] = b;
            try {
                score[b == Basis::X] = non_classical_on(reduce(conjugate_by_frame(c, f), Strategy::Full), w);
            } catch (const BudgetExceededError&) {
                score[b == Basis::X] = std::numeric_limits<int>::max();
            }
        }
        f[w] = score[1] < score[0] ? Basis::X : Basis::Z;
    }
    if (auto r = try_frame(c, f)) return FrameHit{f, *r};
    return std::nullopt;
}

/// GF(2) rank of bit rows.
int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, int bits) {
    int rank = 0;
    for (int col = 0; col < bits && rank < static_cast<int>(rows.size()); ++col) {
        const std::size_t word = static_cast<std::size_t>(col) / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](const auto& r) { return r[word] & bit; });
        if (pivot == rows.end()) continue;
        std::iter_swap(rows.begin() + rank, pivot);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) != rank && (rows[r][word] & bit)) {
                for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] ^= rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<int>> witness_cuts(int n) {
    std::vector<std::vector<int>> cuts;
    for (int w = 0; w < n; ++w) cuts.push_back({w});
    if (n <= kAllCutsLimit) {
        // Remaining bipartitions, each once, with wire 0 on the listed side.
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << (n - 1)); ++m) {
            std::vector<int> side{0};
            for (int w = 1; w < n; ++w) {
                if ((m >> (w - 1)) & 1U) side.push_back(w);
            }
            if (side.size() > 1 && static_cast<int>(side.size()) < n) cuts.push_back(side);
        }
    }
    return cuts;
}

bool find_entanglement_witness(const Circuit& c, FamilyVerdict& v) {
    const int n = c.num_qubits();
    const std::uint64_t inputs = n <= kAllInputsLimit ? (std::uint64_t{1} << n) : 1;
    const auto cuts = witness_cuts(n);
    for (std::uint64_t x = 0; x < inputs; ++x) {
        const std::string input = sim::format_bits(x, n);
        for (const auto& cut : cuts) {
            const int r = entanglement_rank(c, input, cut);
            if (r >= 1) {
                v.cut = cut;
                v.input = input;
                v.rank = r;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::string to_string(const Frame& f) {
    std::string s;
    for (Basis b : f) s += b == Basis::X ? 'X' : 'Z';
    return s;
}

Frame frame_from_string(std::string_view s) {
    Frame f;
    for (char ch : s) {
        if (ch == 'X' || ch == 'x') {
            f.push_back(Basis::X);
        } else if (ch == 'Z' || ch == 'z') {
            f.push_back(Basis::Z);
        } else {
            throw ValidationError(std::string("frame tag '") + ch + "' is not Z or X");
        }
    }
    return f;
}

Frame uniform_frame(int num_qubits, Basis b) { return Frame(static_cast<std::size_t>(num_qubits), b); }

std::string_view to_string(Family f) noexcept {
    switch (f) {
        case Family::I: return "I";
        case Family::II: return "II";
        case Family::III: return "III";
    }
    return "III";
}

std::string FamilyVerdict::label() const {
    std::string s(to_string(family));
    if (!confirmed) s += " (unconfirmed)";
    return s;
}

bool is_classical(const Circuit& c) {
    return std::all_of(c.gates().begin(), c.gates().end(),
                       [](const Gate& g) { return !g.is_unitary() || classical_gate(g); });
}

Circuit conjugate_by_frame(const Circuit& c, const Frame& f) {
    if (static_cast<int>(f.size()) != c.num_qubits()) {
        throw ValidationError("frame has " + std::to_string(f.size()) + " tags for " + std::to_string(c.num_qubits()) +
                              " qubits");
    }
    std::vector<Gate> out;
    for (int w = 0; w < c.num_qubits(); ++w) {
        if (f[w] == Basis::X) out.push_back(Gate::h(w));
    }
    std::vector<bool> closed(f.size(), false);
    for (const auto& g : c.gates()) {
        if (g.is_measure()) {
            const int w = g.targets().front();
            if (f[w] == Basis::X && !closed[w]) {
                out.push_back(Gate::h(w));
                closed[w] = true;
            }
        }
        out.push_back(g);
    }
    for (int w = 0; w < c.num_qubits(); ++w) {
        if (f[w] == Basis::X && !closed[w]) out.push_back(Gate::h(w));
    }
    return Circuit(c.num_qubits(), c.num_bits(), std::move(out));
}

bool frame_aligned(const Circuit& reduced, const Frame& f) {
    Frame tags = f;
    for (const auto& g : reduced.gates()) {
        if (g.kind() == GateKind::SWAP) {
            std::swap(tags[g.targets()[0]], tags[g.targets()[1]]);
            continue;
        }
        if (!g.is_x_family() || g.controls().empty()) continue;
        const auto x_controls = std::count_if(g.controls().begin(), g.controls().end(),
                                              [&](const Control& k) { return tags[k.wire] == Basis::X; });
        const bool target_x = tags[g.targets().front()] == Basis::X;
        if (target_x ? x_controls > 1 : x_controls > 0) return false;
    }
    return true;
}

FamilyVerdict classify(const Circuit& input) {
    const Circuit c = input.without_measurements();
    const int n = c.num_qubits();
    FamilyVerdict v;

    const Circuit cancelled = reduce(c, Strategy::CancelOnly);
    if (is_classical(cancelled)) {
        v.family = Family::I;
        v.frame = uniform_frame(n, Basis::Z);
        v.reduced = cancelled;
        return v;
    }

    const bool exhaustive = n <= kExhaustiveFrameLimit;
    auto hit = exhaustive ? exhaustive_search(c) : greedy_search(c);
    v.notes.push_back(exhaustive ? "frame search: exhaustive over " + std::to_string((1ULL << n) - 1) + " frames"
                                 : "frame search: greedy (more than " + std::to_string(kExhaustiveFrameLimit) +
                                       " qubits)");
    if (hit) {
        v.family = Family::II;
        v.frame = std::move(hit->frame);
        v.reduced = std::move(hit->reduced);
        return v;
    }

    v.family = Family::III;
    v.confirmed = exhaustive;
    if (sim::is_clifford(c)) {
        if (find_entanglement_witness(c, v)) {
            v.confirmed = true;
        } else {
            v.notes.push_back("no entangling basis input found for the searched cuts");
        }
    } else {
        v.notes.push_back("entanglement witness skipped: circuit is not Clifford");
    }
    return v;
}

bool recheck_witness(const Circuit& input, const FamilyVerdict& v) {
    const Circuit c = input.without_measurements();
    switch (v.family) {
        case Family::I:
            return is_classical(reduce(c, Strategy::CancelOnly));
        case Family::II: {
            if (!v.frame) return false;
            auto r = try_frame(c, *v.frame);
            return r && (!v.reduced || *r == *v.reduced);
        }
        case Family::III:
            if (v.cut.empty()) return true;
            return v.rank >= 1 && entanglement_rank(c, v.input, v.cut) == v.rank &&
                   !try_frame(c, uniform_frame(c.num_qubits(), Basis::X));
    }
    return false;
}

int entanglement_rank(const Circuit& c, std::string_view input, const std::vector<int>& side) {
    const int n = c.num_qubits();
    std::set<int> unique(side.begin(), side.end());
    if (unique.size() != side.size()) throw ValidationError("cut lists a wire twice");
    for (int w : side) {
        if (w < 0 || w >= n) throw ValidationError("cut wire q" + std::to_string(w) + " out of range");
    }
    if (!sim::is_clifford(c)) {
        throw NonCliffordError("entanglement rank needs a Clifford circuit");
    }
    if (side.empty() || static_cast<int>(side.size()) == n) return 0;
    const sim::Tableau t = sim::tableau_run(c, input);
    const int k = static_cast<int>(side.size());
    const std::size_t words = (2 * static_cast<std::size_t>(k) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(static_cast<std::size_t>(n), std::vector<std::uint64_t>(words, 0));
    for (int r = 0; r < n; ++r) {
        for (int j = 0; j < k; ++j) {
            const int q = side[j];
            if (t.x(n + r, q)) rows[r][j / 64] |= std::uint64_t{1} << (j % 64);
            if (t.z(n + r, q)) rows[r][(k + j) / 64] |= std::uint64_t{1} << ((k + j) % 64);
        }
    }
    return gf2_rank(std::move(rows), 2 * k) - k;
}

}  // namespace cliffrw::taxonomy

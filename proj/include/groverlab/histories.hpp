// histories.hpp
// The classical side of the story: search strategies with half the drawer
// bits known in advance, their two-state histories across one oracle
// evaluation, the ±1-phase sum that rebuilds the quantum evolution, and the
// exhaustive entanglement-maximization check over sign assignments.

#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "groverlab/density.hpp"
#include "groverlab/grover.hpp"
#include "groverlab/state.hpp"

namespace groverlab {

using Fraction = boost::rational<long long>;

/// Advance knowledge of half of the drawer-number bits: a mask over the k
/// bits plus their values. The candidate set is every k agreeing with the
/// known bits (4 -> 2 possibilities at n = 2).
struct AdvancedInfo {
    int n = 2;
    Bits known_mask = 0;    // value-aligned: bit (n-1-i) set means k_i is known
    Bits known_values = 0;  // values at the known positions

    /// Builds from (position, bit) pairs, position i naming bit k_i.
    static AdvancedInfo from_known_bits(
        int n, const std::vector<std::pair<int, int>>& bits) {
        AdvancedInfo info{n, 0, 0};
        for (auto [pos, bit] : bits) {
            if (pos < 0 || pos >= n) {
                throw std::invalid_argument("AdvancedInfo: bit position out of range");
            }
            if (bit != 0 && bit != 1) {
                throw std::invalid_argument("AdvancedInfo: bit value must be 0 or 1");
            }
            const Bits m = Bits{1} << (n - 1 - pos);
            if (info.known_mask & m) {
                throw std::invalid_argument("AdvancedInfo: duplicate bit position");
            }
            info.known_mask |= m;
            if (bit) info.known_values |= m;
        }
        info.validate();
        return info;
    }

    /// Parses "k0=0" or "k0=0,k3=1".
    static AdvancedInfo parse(const std::string& text, int n) {
        std::vector<std::pair<int, int>> bits;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            const std::string item = text.substr(pos, comma - pos);
            const std::size_t eq = item.find('=');
            if (item.size() < 4 || item[0] != 'k' || eq == std::string::npos) {
                throw std::invalid_argument("AdvancedInfo: expected form k<i>=<bit>, got \"" +
                                            item + "\"");
            }
            bits.emplace_back(std::stoi(item.substr(1, eq - 1)),
                              std::stoi(item.substr(eq + 1)));
            pos = comma + 1;
        }
        return from_known_bits(n, bits);
    }

    void validate() const {
        if (n < 1) throw std::invalid_argument("AdvancedInfo: n must be >= 1");
        if (known_values & ~known_mask) {
            throw std::invalid_argument("AdvancedInfo: values outside the known mask");
        }
        if (std::popcount(known_mask) != n / 2) {
            throw std::invalid_argument(
                "AdvancedInfo: exactly floor(n/2) bits must be known");
        }
    }

    bool contains(Bits k) const { return (k & known_mask) == known_values; }

    /// All drawer numbers compatible with the known bits, ascending.
    std::vector<Bits> candidates() const {
        std::vector<Bits> c;
        for (Bits k = 0; k < (Bits{1} << n); ++k) {
            if (contains(k)) c.push_back(k);
        }
        return c;
    }

    std::string describe() const {
        std::string s;
        for (int i = 0; i < n; ++i) {
            const Bits m = Bits{1} << (n - 1 - i);
            if (known_mask & m) {
                if (!s.empty()) s += ',';
                s += 'k';
                s += std::to_string(i);
                s += '=';
                s += (known_values & m) ? '1' : '0';
            }
        }
        return s;
    }

    friend bool operator==(const AdvancedInfo&, const AdvancedInfo&) = default;
};

/// A pair of sharp states, before and after one oracle evaluation. k and x
/// are preserved; only v may flip.
struct History {
    BasisIndex s_in;
    BasisIndex s_out;

    friend bool operator==(const History&, const History&) = default;
};

/// One oracle evaluation on a sharp state: (k, x, v) -> (k, x, v XOR delta).
/// An involution.
inline BasisIndex classical_delta_step(const BasisIndex& s_in) {
    BasisIndex out = s_in;
    out.v ^= (s_in.k == s_in.x) ? 1 : 0;
    return out;
}

/// The histories compatible with one advance-information scenario and one
/// queried drawer: every candidate k, the queried x, both initial V
/// contents. Candidates ascending, v ascending (four histories at n = 2).
inline std::vector<History> enumerate_histories(const AdvancedInfo& info,
                                                Bits query) {
    info.validate();
    if (!info.contains(query)) {
        throw std::invalid_argument("enumerate_histories: query " +
                                    format_bits(query, info.n) +
                                    " is not in the candidate set");
    }
    std::vector<History> hs;
    for (Bits k : info.candidates()) {
        for (int v = 0; v < 2; ++v) {
            BasisIndex in{k, query, v};
            hs.push_back(History{in, classical_delta_step(in)});
        }
    }
    return hs;
}

/// One history per sharp state of the whole machine: all 2^(2n+1) inputs in
/// flat-index order.
inline std::vector<History> full_history_space(int n) {
    RegisterLayout layout(n);
    std::vector<History> hs;
    hs.reserve(layout.dim());
    for (std::size_t i = 0; i < layout.dim(); ++i) {
        const BasisIndex b = layout.basis_at(i);
        hs.push_back(History{b, classical_delta_step(b)});
    }
    return hs;
}

/// ±1 weight per history, keyed by the history's input state.
struct PhaseAssignment {
    RegisterLayout layout;
    std::vector<int8_t> sign;  // indexed by flat index of s_in

    int at(const BasisIndex& b) const {
        return sign.at(layout.flat_index(b));
    }
};

/// The phase assignment that rebuilds the quantum evolution:
/// phi(k, x, v) = (-1)^v.
///
/// This is a derivation, not a search: every basis state occurs as exactly
/// one history input, so requiring the weighted input sum to equal the
/// prepared superposition pins each sign to (-1)^v, up to a global sign.
/// The nontrivial claim — that the same signs make the weighted *output*
/// sum equal the post-query state — is asserted in tests, not here.
inline PhaseAssignment derive_phases(int n) {
    RegisterLayout layout(n);
    PhaseAssignment phi{layout, std::vector<int8_t>(layout.dim())};
    for (std::size_t i = 0; i < layout.dim(); ++i) {
        phi.sign[i] = (i & 1) ? int8_t{-1} : int8_t{1};
    }
    return phi;
}

/// Normalized sums of the weighted history endpoints:
/// (sum phi |s_in>, sum phi |s_out>). Inputs must be distinct.
inline std::pair<StateVector, StateVector> reconstruct(
    const PhaseAssignment& phases, const std::vector<History>& space) {
    const RegisterLayout& layout = phases.layout;
    std::vector<Cx> raw_in(layout.dim(), Cx{0.0, 0.0});
    std::vector<Cx> raw_out(layout.dim(), Cx{0.0, 0.0});
    std::vector<char> seen(layout.dim(), 0);
    for (const History& h : space) {
        const std::size_t in_flat = layout.flat_index(h.s_in);
        if (seen[in_flat]) {
            throw std::invalid_argument("reconstruct: duplicate history input state");
        }
        seen[in_flat] = 1;
        const double phi = static_cast<double>(phases.at(h.s_in));
        raw_in[in_flat] += phi;
        raw_out[layout.flat_index(h.s_out)] += phi;
    }
    return {StateVector::normalized(layout, std::move(raw_in)),
            StateVector::normalized(layout, std::move(raw_out))};
}

// ---------------------------------------------------------------------------
// Entanglement maximization over sign assignments
// ---------------------------------------------------------------------------

/// Cell index of (k, x) in a sign assignment word, n = 2: bit k*4+x set
/// means sign -1.
inline int sign_cell(Bits k, Bits x) { return static_cast<int>(k * 4 + x); }

/// The assignment induced by the quantum phases after the oracle step:
/// sign -1 exactly where delta(k, x) = 1.
inline std::uint32_t quantum_sign_assignment() {
    std::uint32_t sigma = 0;
    for (Bits k = 0; k < 4; ++k) sigma |= std::uint32_t{1} << sign_cell(k, k);
    return sigma;
}

/// Post-evaluation state for one v-independent sign assignment over (k, x),
/// with V held in the (|0> - |1>)/sqrt(2) factor:
/// amp(k, x, v) = sigma(k, x) * (-1)^v / (4 sqrt(2)).
inline StateVector sign_assignment_state(std::uint32_t sigma) {
    RegisterLayout layout(2);
    const double c = 1.0 / (4.0 * std::sqrt(2.0));
    std::vector<Cx> a(layout.dim());
    for (std::size_t i = 0; i < layout.dim(); ++i) {
        const BasisIndex b = layout.basis_at(i);
        const double s = (sigma >> sign_cell(b.k, b.x)) & 1 ? -1.0 : 1.0;
        a[i] = Cx{s * (b.v ? -c : c), 0.0};
    }
    return StateVector::from_amplitudes(layout, std::move(a));
}

inline double sign_assignment_entropy(std::uint32_t sigma) {
    const StateVector state = sign_assignment_state(sigma);
    return entanglement_entropy(state, state.layout().k_qubits());
}

struct EntanglementSearchReport {
    int n = 2;
    std::size_t cases = 0;
    double max_entropy = 0.0;
    std::size_t maximizer_count = 0;
    double quantum_entropy = 0.0;
    bool quantum_attains_max = false;
    double elapsed_seconds = 0.0;
};

/// Brute-forces S(rho_K) over all 2^16 v-independent sign assignments and
/// reports the maximum, how many assignments attain it (within tol), and
/// whether the quantum assignment does. The search space is restricted to
/// v-independent signs so the enumeration stays desk-scale; chunks are
/// independent and merged by reduction.
inline EntanglementSearchReport entanglement_max_search(int n = 2,
                                                        double tol = 1e-9) {
    if (n != 2) {
        throw std::invalid_argument("entanglement_max_search: only n = 2 is supported");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t total = std::size_t{1} << 16;
    std::vector<double> entropy(total);

    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::future<void>> parts;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        parts.push_back(std::async(std::launch::async, [lo, hi, &entropy] {
            for (std::size_t sigma = lo; sigma < hi; ++sigma) {
                entropy[sigma] =
                    sign_assignment_entropy(static_cast<std::uint32_t>(sigma));
            }
        }));
    }
    for (auto& p : parts) p.get();

    EntanglementSearchReport report;
    report.cases = total;
    report.max_entropy = *std::max_element(entropy.begin(), entropy.end());
    for (double e : entropy) {
        if (e >= report.max_entropy - tol) ++report.maximizer_count;
    }
    report.quantum_entropy = entropy[quantum_sign_assignment()];
    report.quantum_attains_max =
        report.quantum_entropy >= report.max_entropy - tol;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// ---------------------------------------------------------------------------
// Classical query accounting
// ---------------------------------------------------------------------------

/// Transcript of one classical run: which drawers were opened, what the
/// oracle answered, and what was concluded.
struct ClassicalRunRecord {
    Bits oracle_k = 0;
    std::string strategy;
    std::vector<Bits> queries;
    std::vector<int> delta_results;
    Bits solution = 0;
    int query_count = 0;
    bool inferred = false;  // solution concluded without a delta = 1 answer
};

namespace detail {

/// Opens drawers from `order` until delta = 1 or only one candidate is
/// left, which is then inferred without a query.
inline ClassicalRunRecord eliminate_in_order(const std::vector<Bits>& order,
                                             Bits oracle_k,
                                             std::string strategy) {
    ClassicalRunRecord rec;
    rec.oracle_k = oracle_k;
    rec.strategy = std::move(strategy);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const Bits x = order[i];
        const int delta = (x == oracle_k) ? 1 : 0;
        rec.queries.push_back(x);
        rec.delta_results.push_back(delta);
        if (delta == 1) {
            rec.solution = x;
            rec.query_count = static_cast<int>(rec.queries.size());
            return rec;
        }
    }
    rec.solution = order.back();
    rec.inferred = true;
    rec.query_count = static_cast<int>(rec.queries.size());
    return rec;
}

}  // namespace detail

/// Exhaustive search with no advance information: queries the drawers in
/// the given order; after 2^n - 1 misses the last drawer is inferred free.
inline ClassicalRunRecord plain_classical_search(const std::vector<Bits>& strategy,
                                                 Bits oracle_k) {
    const Bits drawers = strategy.empty() ? 0 : Bits{1} << std::bit_width(
                             static_cast<Bits>(strategy.size() - 1));
    std::vector<Bits> sorted = strategy;
    std::sort(sorted.begin(), sorted.end());
    for (Bits i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) {
            throw std::invalid_argument(
                "plain_classical_search: strategy is not a permutation of all drawers");
        }
    }
    if (strategy.size() < 2 || strategy.size() != drawers) {
        throw std::invalid_argument(
            "plain_classical_search: strategy must list all 2^n drawers");
    }
    if (oracle_k >= strategy.size()) {
        throw std::invalid_argument("plain_classical_search: oracle_k out of range");
    }
    std::string id = "plain(";
    const int n = std::bit_width(static_cast<Bits>(strategy.size()) - 1);
    for (std::size_t i = 0; i < strategy.size(); ++i) {
        if (i) id += ',';
        id += format_bits(strategy[i], n);
    }
    id += ')';
    return detail::eliminate_in_order(strategy, oracle_k, std::move(id));
}

/// Search with advance information: only the candidate drawers are opened,
/// ascending. With two candidates (n = 2) a single evaluation decides —
/// delta = 1 confirms the queried candidate, delta = 0 selects the other.
inline ClassicalRunRecord advanced_classical_search(const AdvancedInfo& info,
                                                    Bits oracle_k) {
    info.validate();
    if (!info.contains(oracle_k)) {
        throw std::invalid_argument(
            "advanced_classical_search: oracle_k is not in the candidate set");
    }
    return detail::eliminate_in_order(info.candidates(), oracle_k,
                                      "advanced(" + info.describe() + ")");
}

inline std::vector<Bits> ascending_order(int n) {
    std::vector<Bits> order(Bits{1} << n);
    std::iota(order.begin(), order.end(), Bits{0});
    return order;
}

/// Oracle-query cost of every route to the solution: exhaustive classical,
/// classical with half the bits known, quantum. Averages are exact
/// rationals over a uniform oracle choice.
struct QueryTable {
    int n = 2;
    Fraction plain_average;
    int plain_worst = 0;
    Fraction advanced_average;
    long long quantum = 0;
};

inline int default_grover_iterations(int n) {
    const double N = static_cast<double>(Bits{1} << n);
    const int it = static_cast<int>(std::floor(std::acos(-1.0) / 4.0 * std::sqrt(N)));
    return std::max(1, it);
}

inline QueryTable expected_query_table(int n) {
    RegisterLayout layout(n);  // validates n
    const Bits drawers = layout.register_dim();
    QueryTable table;
    table.n = n;

    // Plain search, canonical ascending order, uniform oracle choice.
    long long total = 0;
    int worst = 0;
    const std::vector<Bits> order = ascending_order(n);
    for (Bits k = 0; k < drawers; ++k) {
        const int q = plain_classical_search(order, k).query_count;
        total += q;
        worst = std::max(worst, q);
    }
    table.plain_average = Fraction(total, static_cast<long long>(drawers));
    table.plain_worst = worst;

    // Advance information: every mask of floor(n/2) known bits, every value
    // pattern, every compatible oracle choice.
    long long adv_total = 0;
    long long adv_runs = 0;
    for (Bits mask = 0; mask < drawers; ++mask) {
        if (std::popcount(mask) != n / 2) continue;
        for (Bits values = 0; values < drawers; ++values) {
            if (values & ~mask) continue;
            const AdvancedInfo info{n, mask, values};
            for (Bits k : info.candidates()) {
                adv_total += advanced_classical_search(info, k).query_count;
                ++adv_runs;
            }
        }
    }
    table.advanced_average = Fraction(adv_total, adv_runs);

    QueryCounter counter;
    run_grover(n, default_grover_iterations(n), counter);
    table.quantum = counter.count();
    return table;
}

}  // namespace groverlab

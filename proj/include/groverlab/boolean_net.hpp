// boolean_net.hpp
// The drawer-search problem as a nonlinear Boolean network:
//   delta = AND(y0, y1),  y0 = NOT XOR(k0, x0),  y1 = NOT XOR(k1, x1),
// with delta = 1 the satisfaction condition. Hard-wired at n = 2; a
// general-n AND-of-XNORs is provided for completeness.

#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "groverlab/measure.hpp"
#include "groverlab/state.hpp"

namespace groverlab {

using Fraction = boost::rational<long long>;

/// One full evaluation of the network's variables.
struct NetworkAssignment {
    int k0 = 0, k1 = 0;
    int x0 = 0, x1 = 0;
    int y0 = 0, y1 = 0;
    int delta = 0;

    friend bool operator==(const NetworkAssignment&, const NetworkAssignment&) = default;
};

inline void check_bit(int b, const char* name) {
    if (b != 0 && b != 1) {
        throw std::invalid_argument(std::string("eval_network: ") + name +
                                    " must be 0 or 1");
    }
}

/// Evaluates all three gates. delta = 1 iff (k0,k1) = (x0,x1).
inline NetworkAssignment eval_network(int k0, int k1, int x0, int x1) {
    check_bit(k0, "k0");
    check_bit(k1, "k1");
    check_bit(x0, "x0");
    check_bit(x1, "x1");
    NetworkAssignment a{k0, k1, x0, x1, 0, 0, 0};
    a.y0 = (k0 ^ x0) ? 0 : 1;
    a.y1 = (k1 ^ x1) ? 0 : 1;
    a.delta = a.y0 & a.y1;
    return a;
}

/// AND of per-bit XNORs for arbitrary n: 1 iff k = x.
inline int network_delta(Bits k, Bits x, int n) {
    int d = 1;
    for (int i = 0; i < n; ++i) {
        const int ki = static_cast<int>((k >> (n - 1 - i)) & 1);
        const int xi = static_cast<int>((x >> (n - 1 - i)) & 1);
        d &= (ki ^ xi) ? 0 : 1;
    }
    return d;
}

/// Optional fixing of the network's free inputs.
struct PartialAssignment {
    std::optional<int> k0, k1, x0, x1;

    static PartialAssignment fix_k(Bits k) {
        return {static_cast<int>((k >> 1) & 1), static_cast<int>(k & 1),
                std::nullopt, std::nullopt};
    }
};

/// All completions of the fixed bits that satisfy delta = 1.
inline std::vector<NetworkAssignment> satisfying_assignments(
    const PartialAssignment& fixed = {}) {
    std::vector<NetworkAssignment> out;
    for (int k0 = 0; k0 < 2; ++k0)
        for (int k1 = 0; k1 < 2; ++k1)
            for (int x0 = 0; x0 < 2; ++x0)
                for (int x1 = 0; x1 < 2; ++x1) {
                    if (fixed.k0 && *fixed.k0 != k0) continue;
                    if (fixed.k1 && *fixed.k1 != k1) continue;
                    if (fixed.x0 && *fixed.x0 != x0) continue;
                    if (fixed.x1 && *fixed.x1 != x1) continue;
                    NetworkAssignment a = eval_network(k0, k1, x0, x1);
                    if (a.delta == 1) out.push_back(a);
                }
    return out;
}

struct TrialCount {
    Fraction expected;
    int worst = 0;
};

namespace detail {

/// Trials until delta = 1 or three failures, after which the remaining x is
/// known without evaluating. One trial = one full evaluation of the gates.
inline int trials_for(Bits k, const std::vector<Bits>& order) {
    for (std::size_t i = 0; i < 3; ++i) {
        const Bits x = order[i];
        const NetworkAssignment a =
            eval_network(static_cast<int>((k >> 1) & 1), static_cast<int>(k & 1),
                         static_cast<int>((x >> 1) & 1), static_cast<int>(x & 1));
        if (a.delta == 1) return static_cast<int>(i) + 1;
    }
    return 3;
}

inline void check_trial_order(const std::vector<Bits>& order) {
    std::vector<Bits> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::vector<Bits>{0, 1, 2, 3}) {
        throw std::invalid_argument(
            "classical_trial_count: trial order must be a permutation of the 4 x values");
    }
}

}  // namespace detail

/// Expected and worst-case trial counts for one order: over a uniform k
/// when none is fixed, or for the single fixed k.
inline TrialCount classical_trial_count(std::optional<Bits> fixed_k,
                                        const std::vector<Bits>& order) {
    detail::check_trial_order(order);
    if (fixed_k) {
        if (*fixed_k > 3) {
            throw std::invalid_argument("classical_trial_count: k out of range");
        }
        const int t = detail::trials_for(*fixed_k, order);
        return {Fraction(t), t};
    }
    long long total = 0;
    int worst = 0;
    for (Bits k = 0; k < 4; ++k) {
        const int t = detail::trials_for(k, order);
        total += t;
        worst = std::max(worst, t);
    }
    return {Fraction(total, 4), worst};
}

/// Expected trials averaged over all 24 trial orders. Fixing k does not
/// change the average: the problem keeps its difficulty.
inline Fraction average_trials_over_orders(std::optional<Bits> fixed_k) {
    std::vector<Bits> order{0, 1, 2, 3};
    Fraction total(0);
    long long count = 0;
    do {
        total += classical_trial_count(fixed_k, order).expected;
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return total / Fraction(count);
}

/// How a measured state relates to the network: probability mass on
/// delta = 1 assignments and the explicit (k, x) support.
struct SatisfactionReport {
    double mass_on_delta1 = 0.0;
    std::size_t support_size = 0;
    std::vector<std::tuple<Bits, Bits, double>> support;  // (k, x, probability)
};

inline SatisfactionReport verify_quantum_satisfaction(const StateVector& state) {
    if (state.layout().n() != 2) {
        throw std::invalid_argument("verify_quantum_satisfaction: state must have n = 2");
    }
    const JointDistribution joint = joint_outcome_distribution(
        state, {state.layout().k_qubits(), state.layout().x_qubits()});
    SatisfactionReport report;
    for (const auto& [key, p] : joint.table) {
        if (p <= kAmpTol) continue;
        const Bits k = key[0];
        const Bits x = key[1];
        report.support.emplace_back(k, x, p);
        if (network_delta(k, x, 2) == 1) report.mass_on_delta1 += p;
    }
    report.support_size = report.support.size();
    return report;
}

}  // namespace groverlab

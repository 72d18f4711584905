// measure.hpp
// Projective measurement of qubit subsets with forced or seeded-sampled
// outcomes, and exact joint outcome distributions by enumeration.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "groverlab/density.hpp"
#include "groverlab/state.hpp"

namespace groverlab {

/// Pick a specific outcome (it must have nonzero probability).
struct Forced {
    Bits outcome = 0;
};

/// Draw the outcome from the Born distribution; deterministic per seed.
struct Sampled {
    std::uint64_t seed = 0;
};

using MeasureMode = std::variant<Forced, Sampled>;

struct MeasurementRecord {
    std::vector<int> qubits;
    Bits outcome = 0;
    double probability = 0.0;
    StateVector post;
};

/// Born probabilities of all 2^|qubits| outcomes, indexed by packed outcome
/// value (first listed qubit = most significant bit).
inline std::vector<double> outcome_probabilities(const StateVector& state,
                                                 const std::vector<int>& qubits) {
    check_qubit_subset(state.layout(), qubits);
    if (qubits.empty()) {
        throw std::invalid_argument("measure: empty qubit subset");
    }
    std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        p[state.layout().outcome_of(i, qubits)] += std::norm(state.amp(i));
    }
    return p;
}

namespace detail {

// Uniform double in [0,1) from the top 53 bits of the engine output, so the
// draw is identical across standard-library implementations.
inline double canonical_unit(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Measures `qubits`, returning the outcome, its Born probability, and the
/// renormalized projected state. Forcing an outcome of probability <= kAmpTol
/// is an error.
inline MeasurementRecord measure(const StateVector& state,
                                 const std::vector<int>& qubits,
                                 const MeasureMode& mode) {
    const std::vector<double> probs = outcome_probabilities(state, qubits);

    Bits outcome = 0;
    if (std::holds_alternative<Forced>(mode)) {
        outcome = std::get<Forced>(mode).outcome;
        if (outcome >= probs.size()) {
            throw std::invalid_argument("measure: forced outcome has too many bits");
        }
        if (probs[outcome] <= kAmpTol) {
            throw std::domain_error("measure: forced outcome has zero probability");
        }
    } else {
        std::mt19937_64 eng(std::get<Sampled>(mode).seed);
        const double u = detail::canonical_unit(eng);
        double cum = 0.0;
        Bits last_possible = 0;
        for (Bits o = 0; o < probs.size(); ++o) {
            if (probs[o] > 0.0) last_possible = o;
        }
        outcome = last_possible;
        for (Bits o = 0; o < probs.size(); ++o) {
            cum += probs[o];
            if (u < cum) {
                outcome = o;
                break;
            }
        }
    }

    // Project onto the outcome subspace and renormalize.
    std::vector<Cx> post(state.dim(), Cx{0.0, 0.0});
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (state.layout().outcome_of(i, qubits) == outcome) {
            post[i] = state.amp(i);
        }
    }
    return MeasurementRecord{qubits, outcome, probs[outcome],
                             StateVector::normalized(state.layout(), std::move(post))};
}

/// Exact joint distribution over the listed (disjoint) qubit sets, computed
/// by enumeration. Key = one outcome per set, in the given set order.
struct JointDistribution {
    std::vector<std::vector<int>> sets;
    std::map<std::vector<Bits>, double> table;
};

inline JointDistribution joint_outcome_distribution(
    const StateVector& state, const std::vector<std::vector<int>>& sets) {
    std::vector<int> all;
    for (const auto& s : sets) {
        if (s.empty()) throw std::invalid_argument("joint distribution: empty set");
        all.insert(all.end(), s.begin(), s.end());
    }
    check_qubit_subset(state.layout(), all);  // rejects overlaps as duplicates

    JointDistribution dist{sets, {}};
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state.amp(i));
        if (p == 0.0) continue;
        std::vector<Bits> key;
        key.reserve(sets.size());
        for (const auto& s : sets) {
            key.push_back(state.layout().outcome_of(i, s));
        }
        dist.table[key] += p;
    }
    return dist;
}

}  // namespace groverlab

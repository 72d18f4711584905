// density.hpp
// Reduced density matrices and von Neumann entropy (base-2 logarithm).

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "groverlab/state.hpp"

namespace groverlab {

/// Density matrix of a kept qubit subset after tracing out the rest.
struct ReducedDensity {
    std::vector<int> qubits;   // kept qubits, as listed by the caller
    Eigen::MatrixXcd matrix;   // Hermitian, trace 1

    double trace() const { return matrix.trace().real(); }

    double hermiticity_error() const {
        return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    }

    /// Real eigenvalues in ascending order.
    std::vector<double> eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
        const auto& ev = solver.eigenvalues();
        return std::vector<double>(ev.data(), ev.data() + ev.size());
    }
};

inline void check_qubit_subset(const RegisterLayout& layout,
                               const std::vector<int>& qubits) {
    std::set<int> seen;
    for (int q : qubits) {
        if (!layout.valid_qubit(q)) {
            throw std::invalid_argument("qubit subset: index out of range");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument("qubit subset: duplicate qubit");
        }
    }
}

/// Flat-index mask of the qubits *not* in `keep`.
inline std::size_t traced_out_mask(const RegisterLayout& layout,
                                   const std::vector<int>& keep) {
    std::size_t keep_mask = 0;
    for (int q : keep) keep_mask |= std::size_t{1} << layout.bit_position(q);
    return (layout.dim() - 1) & ~keep_mask;
}

/// Traces out everything but `keep`. The kept subsystem must be a proper,
/// nonempty subset of the machine's qubits.
inline ReducedDensity partial_trace(const StateVector& state,
                                    const std::vector<int>& keep) {
    const RegisterLayout& layout = state.layout();
    check_qubit_subset(layout, keep);
    if (keep.empty() || static_cast<int>(keep.size()) == layout.total_qubits()) {
        throw std::invalid_argument("partial_trace: keep must be a proper nonempty subset");
    }

    const std::size_t d = std::size_t{1} << keep.size();
    ReducedDensity rho{keep, Eigen::MatrixXcd::Zero(static_cast<long>(d),
                                                    static_cast<long>(d))};
    const std::size_t env = traced_out_mask(layout, keep);

    // rho[a][b] = sum_e psi(a,e) conj(psi(b,e)): pairs of basis states that
    // agree on every traced-out qubit.
    std::vector<Bits> row_of(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) {
        row_of[i] = layout.outcome_of(i, keep);
    }
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (std::norm(state.amp(i)) == 0.0) continue;
        for (std::size_t j = 0; j < state.dim(); ++j) {
            if ((i ^ j) & env) continue;
            rho.matrix(static_cast<long>(row_of[i]), static_cast<long>(row_of[j])) +=
                state.amp(i) * std::conj(state.amp(j));
        }
    }
    return rho;
}

/// Base-2 von Neumann entropy of the reduced state of `part`, in bits.
/// 0 for a product state, |part| for a maximally mixed marginal.
inline double entanglement_entropy(const StateVector& state,
                                   const std::vector<int>& part) {
    ReducedDensity rho = partial_trace(state, part);
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda > 1e-15) s -= lambda * std::log2(lambda);
    }
    return s;
}

}  // namespace groverlab

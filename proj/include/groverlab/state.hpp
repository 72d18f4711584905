// state.hpp
// Dense complex state vectors over the (K, X, V) registers and signed
// basis permutations, the building blocks of every unitary used here.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "groverlab/layout.hpp"

namespace groverlab {

using Cx = std::complex<double>;

/// Global amplitude/probability tolerance. Every amplitude appearing in the
/// simulated states is of the form ±2^(-m/2), so 1e-12 is conservative.
inline constexpr double kAmpTol = 1e-12;

/// Normalized state vector over a fixed register layout. Values are
/// immutable after construction; every factory and operation returns a
/// state with |norm - 1| <= kAmpTol.
class StateVector {
public:
    static StateVector basis_state(const RegisterLayout& layout,
                                   const BasisIndex& b) {
        std::vector<Cx> a(layout.dim(), Cx{0.0, 0.0});
        a[layout.flat_index(b)] = Cx{1.0, 0.0};
        return StateVector(layout, std::move(a));
    }

    /// Accepts amplitudes already normalized to 1 within kAmpTol.
    static StateVector from_amplitudes(const RegisterLayout& layout,
                                       std::vector<Cx> amps) {
        StateVector s(layout, std::move(amps));
        if (std::abs(s.norm() - 1.0) > kAmpTol) {
            throw std::invalid_argument("StateVector: amplitudes are not normalized");
        }
        return s;
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    static StateVector normalized(const RegisterLayout& layout,
                                  std::vector<Cx> raw) {
        double n2 = 0.0;
        for (const Cx& a : raw) n2 += std::norm(a);
        if (n2 <= kAmpTol * kAmpTol) {
            throw std::domain_error("StateVector: cannot normalize a zero vector");
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (Cx& a : raw) a *= inv;
        return StateVector(layout, std::move(raw));
    }

    const RegisterLayout& layout() const { return layout_; }
    std::size_t dim() const { return amp_.size(); }

    std::span<const Cx> amplitudes() const { return amp_; }
    const Cx& amp(std::size_t flat) const { return amp_.at(flat); }
    const Cx& amp(const BasisIndex& b) const { return amp_[layout_.flat_index(b)]; }

    double norm() const {
        double n2 = 0.0;
        for (const Cx& a : amp_) n2 += std::norm(a);
        return std::sqrt(n2);
    }

private:
    StateVector(const RegisterLayout& layout, std::vector<Cx> amps)
        : layout_(layout), amp_(std::move(amps)) {
        if (amp_.size() != layout_.dim()) {
            throw std::invalid_argument("StateVector: amplitude count != 2^(2n+1)");
        }
    }

    RegisterLayout layout_;
    std::vector<Cx> amp_;
};

/// The prepared input: every register in an even superposition, V in the
/// (|0> - |1>)/sqrt(2) combination. Amplitude of (k, x, v) is
/// (-1)^v / (2^n sqrt(2)).
inline StateVector make_uniform_input(int n) {
    RegisterLayout layout(n);
    const double c = 1.0 / (static_cast<double>(layout.register_dim()) * std::sqrt(2.0));
    std::vector<Cx> a(layout.dim());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = Cx{(i & 1) ? -c : c, 0.0};
    }
    return StateVector::from_amplitudes(layout, std::move(a));
}

/// A bijection on basis states with a ±1 phase per source state. All the
/// unitaries of the search algorithm except the X-basis rotation are of
/// this form.
struct BasisMap {
    RegisterLayout layout;
    std::vector<std::size_t> image;  // image[flat] = target flat index
    std::vector<int8_t> phase;       // phase[flat] in {+1, -1}
};

/// Builds a BasisMap by tabulating fn over all basis states. fn returns the
/// image index and its sign.
template <typename Fn>
BasisMap make_basis_map(const RegisterLayout& layout, Fn&& fn) {
    BasisMap m{layout, std::vector<std::size_t>(layout.dim()),
               std::vector<int8_t>(layout.dim())};
    for (std::size_t i = 0; i < layout.dim(); ++i) {
        auto [out, sign] = fn(layout.basis_at(i));
        m.image[i] = layout.flat_index(out);
        m.phase[i] = sign;
    }
    return m;
}

inline void check_basis_map(const BasisMap& m) {
    const std::size_t d = m.layout.dim();
    if (m.image.size() != d || m.phase.size() != d) {
        throw std::invalid_argument("BasisMap: table size != layout dimension");
    }
    std::vector<char> seen(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (m.image[i] >= d || seen[m.image[i]]) {
            throw std::invalid_argument("BasisMap: image is not a bijection");
        }
        seen[m.image[i]] = 1;
        if (m.phase[i] != 1 && m.phase[i] != -1) {
            throw std::invalid_argument("BasisMap: phase outside {+1, -1}");
        }
    }
}

/// Applies a signed basis permutation. Norm-preserving and linear.
inline StateVector apply_basis_map(const StateVector& state, const BasisMap& m) {
    if (!(state.layout() == m.layout)) {
        throw std::invalid_argument("apply_basis_map: layout mismatch");
    }
    check_basis_map(m);
    std::vector<Cx> out(state.dim(), Cx{0.0, 0.0});
    for (std::size_t i = 0; i < state.dim(); ++i) {
        out[m.image[i]] = static_cast<double>(m.phase[i]) * state.amp(i);
    }
    return StateVector::from_amplitudes(state.layout(), std::move(out));
}

/// Largest |a_i - b_i| over the shared basis.
inline double max_amplitude_diff(const StateVector& a, const StateVector& b) {
    if (!(a.layout() == b.layout())) {
        throw std::invalid_argument("max_amplitude_diff: layout mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a.amp(i) - b.amp(i)));
    }
    return m;
}

/// True when the state factors as (K,X part) ⊗ (|0> - |1>)/sqrt(2) on V,
/// i.e. amp(k,x,1) = -amp(k,x,0) throughout. The displayed states of the
/// algorithm all carry this factor; it is verified, never assumed.
inline bool has_v_minus_factor(const StateVector& state, double tol = kAmpTol) {
    for (std::size_t i = 0; i < state.dim(); i += 2) {
        if (std::abs(state.amp(i) + state.amp(i + 1)) > tol) return false;
    }
    return true;
}

}  // namespace groverlab

// layout.hpp
// Register geometry and basis-index conventions shared by every module.
//
// The simulated machine has three registers:
//   K — n qubits holding the oracle's drawer choice,
//   X — n qubits holding the query / solution,
//   V — one qubit receiving the oracle result (XOR-accumulated).
//
// Qubit numbering: qubits [0, n) are K (k0 first), [n, 2n) are X, qubit 2n
// is V. Bitstrings read left to right, so "01" means bit0=0, bit1=1 and
// denotes drawer number 1.
//
// Flat amplitude index: k bits are most significant, then x bits, then v:
//   flat = (k << (n+1)) | (x << 1) | v.
// This convention is fixed; all modules and serialized records share it.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace groverlab {

using Bits = std::uint64_t;

/// One sharp configuration (k, x, v): the unit of history endpoints.
struct BasisIndex {
    Bits k = 0;
    Bits x = 0;
    int v = 0;

    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Fixed (K, X, V) register geometry for a given search-register size n.
class RegisterLayout {
public:
    explicit RegisterLayout(int n) : n_(n) {
        if (n < 1) {
            throw std::invalid_argument("RegisterLayout: n must be >= 1");
        }
        if (2 * n + 1 >= 63) {
            throw std::invalid_argument(
                "RegisterLayout: 2n+1 qubits overflow the flat index word");
        }
    }

    int n() const { return n_; }
    int total_qubits() const { return 2 * n_ + 1; }
    std::size_t dim() const { return std::size_t{1} << total_qubits(); }

    /// Number of drawers N = 2^n.
    Bits register_dim() const { return Bits{1} << n_; }

    std::size_t flat_index(const BasisIndex& b) const {
        check_basis(b);
        return (static_cast<std::size_t>(b.k) << (n_ + 1)) |
               (static_cast<std::size_t>(b.x) << 1) |
               static_cast<std::size_t>(b.v);
    }

    BasisIndex basis_at(std::size_t flat) const {
        if (flat >= dim()) {
            throw std::out_of_range("RegisterLayout: flat index out of range");
        }
        BasisIndex b;
        b.v = static_cast<int>(flat & 1);
        b.x = (flat >> 1) & (register_dim() - 1);
        b.k = flat >> (n_ + 1);
        return b;
    }

    void check_basis(const BasisIndex& b) const {
        if (b.k >= register_dim() || b.x >= register_dim() ||
            (b.v != 0 && b.v != 1)) {
            throw std::invalid_argument("BasisIndex: bits exceed register layout");
        }
    }

    // Qubit index lists for subsystem selection.
    std::vector<int> k_qubits() const { return range(0, n_); }
    std::vector<int> x_qubits() const { return range(n_, 2 * n_); }
    std::vector<int> v_qubit() const { return {2 * n_}; }

    bool valid_qubit(int q) const { return q >= 0 && q < total_qubits(); }

    /// Bit position of qubit q inside the flat index (qubit 0 = k0 is the
    /// most significant bit).
    int bit_position(int q) const {
        if (!valid_qubit(q)) {
            throw std::invalid_argument("RegisterLayout: qubit index out of range");
        }
        return total_qubits() - 1 - q;
    }

    int bit_of(std::size_t flat, int q) const {
        return static_cast<int>((flat >> bit_position(q)) & 1);
    }

    /// Packs the bits of the listed qubits (first listed = most significant).
    Bits outcome_of(std::size_t flat, const std::vector<int>& qubits) const {
        Bits out = 0;
        for (int q : qubits) {
            out = (out << 1) | static_cast<Bits>(bit_of(flat, q));
        }
        return out;
    }

    friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) {
        return a.n_ == b.n_;
    }

private:
    static std::vector<int> range(int lo, int hi) {
        std::vector<int> r;
        for (int q = lo; q < hi; ++q) r.push_back(q);
        return r;
    }

    int n_;
};

/// Parses a bitstring like "01" (left to right, k0 first) into its value.
inline Bits parse_bits(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n) {
        throw std::invalid_argument("bitstring \"" + s + "\" is not " +
                                    std::to_string(n) + " bits long");
    }
    Bits v = 0;
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring \"" + s + "\" has non-binary digit");
        }
        v = (v << 1) | static_cast<Bits>(c - '0');
    }
    return v;
}

inline std::string format_bits(Bits value, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if ((value >> (n - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

}  // namespace groverlab

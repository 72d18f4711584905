#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "expected_states.hpp"
#include "groverlab/groverlab.hpp"

using namespace groverlab;
using Catch::Approx;

TEST_CASE("register layout maps (k, x, v) to flat indices and back") {
    RegisterLayout layout(2);

    REQUIRE(layout.n() == 2);
    REQUIRE(layout.total_qubits() == 5);
    REQUIRE(layout.dim() == 32);
    REQUIRE(layout.register_dim() == 4);

    REQUIRE(layout.flat_index({1, 2, 1}) == ((1u << 3) | (2u << 1) | 1u));
    REQUIRE(layout.basis_at(13) == BasisIndex{1, 2, 1});
    for (std::size_t i = 0; i < layout.dim(); ++i) {
        REQUIRE(layout.flat_index(layout.basis_at(i)) == i);
    }

    REQUIRE_THROWS_AS(layout.flat_index({4, 0, 0}), std::invalid_argument);
    REQUIRE_THROWS_AS(layout.flat_index({0, 4, 0}), std::invalid_argument);
    REQUIRE_THROWS_AS(layout.flat_index({0, 0, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(layout.basis_at(32), std::out_of_range);
    REQUIRE_THROWS_AS(RegisterLayout(0), std::invalid_argument);
    REQUIRE_THROWS_AS(RegisterLayout(31), std::invalid_argument);
}

TEST_CASE("qubit bit positions follow the k0-most-significant convention") {
    RegisterLayout layout(2);

    REQUIRE(layout.bit_position(0) == 4);  // k0
    REQUIRE(layout.bit_position(4) == 0);  // v
    REQUIRE(layout.k_qubits() == std::vector<int>{0, 1});
    REQUIRE(layout.x_qubits() == std::vector<int>{2, 3});
    REQUIRE(layout.v_qubit() == std::vector<int>{4});

    const std::size_t flat = layout.flat_index({2, 1, 0});  // bits 10 01 0
    REQUIRE(layout.bit_of(flat, 0) == 1);
    REQUIRE(layout.bit_of(flat, 1) == 0);
    REQUIRE(layout.bit_of(flat, 3) == 1);
    REQUIRE(layout.outcome_of(flat, layout.k_qubits()) == 2);
    REQUIRE(layout.outcome_of(flat, layout.x_qubits()) == 1);
    REQUIRE(layout.outcome_of(flat, layout.v_qubit()) == 0);
    REQUIRE(layout.outcome_of(flat, {0, 1, 2, 3, 4}) == flat);
    // Listing order controls packing: reversed list reverses the bits.
    REQUIRE(layout.outcome_of(flat, {1, 0}) == 1);
    REQUIRE_THROWS_AS(layout.bit_of(flat, 5), std::invalid_argument);
}

TEST_CASE("bitstrings parse and format left to right") {
    REQUIRE(parse_bits("01", 2) == 1);
    REQUIRE(parse_bits("10", 2) == 2);
    REQUIRE(parse_bits("110", 3) == 6);
    REQUIRE(format_bits(2, 2) == "10");
    for (Bits v = 0; v < 8; ++v) {
        REQUIRE(parse_bits(format_bits(v, 3), 3) == v);
    }
    REQUIRE_THROWS_AS(parse_bits("012", 2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_bits("0a", 2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_bits("0", 2), std::invalid_argument);
}

TEST_CASE("the prepared input is the even superposition with the V minus factor") {
    const StateVector in2 = make_uniform_input(2);
    REQUIRE(in2.norm() == Approx(1.0).margin(kAmpTol));
    REQUIRE(max_amplitude_diff(in2, expected::input()) <= kAmpTol);
    REQUIRE(in2.amp({1, 2, 0}).real() == Approx(1.0 / std::sqrt(32.0)).margin(kAmpTol));
    REQUIRE(in2.amp({1, 2, 1}).real() == Approx(-1.0 / std::sqrt(32.0)).margin(kAmpTol));

    const StateVector in1 = make_uniform_input(1);
    REQUIRE(in1.amp({0, 0, 0}).real() == Approx(1.0 / std::sqrt(8.0)).margin(kAmpTol));
    REQUIRE(in1.amp({1, 0, 1}).real() == Approx(-1.0 / std::sqrt(8.0)).margin(kAmpTol));

    for (int n = 1; n <= 3; ++n) {
        const StateVector in = make_uniform_input(n);
        REQUIRE(in.norm() == Approx(1.0).margin(kAmpTol));
        REQUIRE(has_v_minus_factor(in));
    }
}

TEST_CASE("state factories enforce their contracts") {
    RegisterLayout layout(1);

    const StateVector b = StateVector::basis_state(layout, {1, 0, 1});
    REQUIRE(b.amp(layout.flat_index({1, 0, 1})) == Cx{1.0, 0.0});
    REQUIRE(b.norm() == Approx(1.0).margin(kAmpTol));

    std::vector<Cx> unnormalized(layout.dim(), Cx{0.5, 0.0});
    REQUIRE_THROWS_AS(StateVector::from_amplitudes(layout, unnormalized),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(StateVector::from_amplitudes(layout, std::vector<Cx>(4)),
                      std::invalid_argument);

    std::vector<Cx> raw(layout.dim(), Cx{0.0, 0.0});
    raw[0] = Cx{2.0, 0.0};
    const StateVector scaled = StateVector::normalized(layout, raw);
    REQUIRE(scaled.amp(0) == Cx{1.0, 0.0});
    REQUIRE_THROWS_AS(StateVector::normalized(layout, std::vector<Cx>(layout.dim())),
                      std::domain_error);
}

TEST_CASE("signed basis permutations validate, apply, and stay linear") {
    RegisterLayout layout(1);
    const StateVector in = make_uniform_input(1);

    SECTION("identity map leaves every amplitude in place") {
        const BasisMap id = make_basis_map(layout, [](const BasisIndex& b) {
            return std::pair<BasisIndex, int8_t>{b, int8_t{1}};
        });
        REQUIRE(max_amplitude_diff(apply_basis_map(in, id), in) <= kAmpTol);
    }

    SECTION("a signed v-flip squares to the global phase -1") {
        const BasisMap flip = make_basis_map(layout, [](const BasisIndex& b) {
            BasisIndex out = b;
            out.v ^= 1;
            return std::pair<BasisIndex, int8_t>{out, b.v ? int8_t{-1} : int8_t{1}};
        });
        const StateVector once = apply_basis_map(in, flip);
        const StateVector twice = apply_basis_map(once, flip);
        for (std::size_t i = 0; i < in.dim(); ++i) {
            REQUIRE(std::abs(twice.amp(i) + in.amp(i)) <= kAmpTol);
        }
        REQUIRE(once.norm() == Approx(1.0).margin(kAmpTol));
    }

    SECTION("malformed tables are rejected") {
        BasisMap broken{layout, std::vector<std::size_t>(layout.dim(), 0),
                        std::vector<int8_t>(layout.dim(), 1)};
        REQUIRE_THROWS_AS(check_basis_map(broken), std::invalid_argument);

        BasisMap bad_phase = make_basis_map(layout, [](const BasisIndex& b) {
            return std::pair<BasisIndex, int8_t>{b, int8_t{1}};
        });
        bad_phase.phase[0] = 2;
        REQUIRE_THROWS_AS(check_basis_map(bad_phase), std::invalid_argument);

        BasisMap wrong_size{layout, std::vector<std::size_t>(4),
                            std::vector<int8_t>(4, 1)};
        REQUIRE_THROWS_AS(apply_basis_map(in, wrong_size), std::invalid_argument);
    }

    SECTION("application distributes over superpositions") {
        const BasisMap flip = make_basis_map(layout, [](const BasisIndex& b) {
            BasisIndex out = b;
            out.v ^= 1;
            return std::pair<BasisIndex, int8_t>{out, int8_t{1}};
        });
        std::vector<Cx> raw(layout.dim(), Cx{0.0, 0.0});
        raw[layout.flat_index({0, 1, 0})] = Cx{3.0, 0.0};
        raw[layout.flat_index({1, 0, 1})] = Cx{-4.0, 0.0};
        const StateVector combo = StateVector::normalized(layout, raw);
        const StateVector mapped = apply_basis_map(combo, flip);
        REQUIRE(mapped.amp({0, 1, 1}).real() == Approx(0.6).margin(kAmpTol));
        REQUIRE(mapped.amp({1, 0, 0}).real() == Approx(-0.8).margin(kAmpTol));
    }
}

TEST_CASE("partial trace produces the textbook marginals") {
    const std::vector<int> k_qubits = RegisterLayout(2).k_qubits();

    SECTION("product input: rank-one rho_K with all entries 1/4") {
        const ReducedDensity rho = partial_trace(expected::input(), k_qubits);
        REQUIRE(rho.matrix.rows() == 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                REQUIRE(rho.matrix(i, j).real() == Approx(0.25).margin(kAmpTol));
                REQUIRE(rho.matrix(i, j).imag() == Approx(0.0).margin(kAmpTol));
            }
        }
        const std::vector<double> ev = rho.eigenvalues();
        REQUIRE(ev.back() == Approx(1.0).margin(1e-9));
        REQUIRE(ev.front() == Approx(0.0).margin(1e-9));
    }

    SECTION("post-query state: rho_K is maximally mixed") {
        const ReducedDensity rho = partial_trace(expected::post_query(), k_qubits);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double want = (i == j) ? 0.25 : 0.0;
                REQUIRE(std::abs(rho.matrix(i, j) - Cx{want, 0.0}) <= kAmpTol);
            }
        }
    }

    SECTION("measured state: rho_K projects onto |01>") {
        const ReducedDensity rho = partial_trace(expected::solved_k01(), k_qubits);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double want = (i == 1 && j == 1) ? 1.0 : 0.0;
                REQUIRE(std::abs(rho.matrix(i, j) - Cx{want, 0.0}) <= kAmpTol);
            }
        }
    }

    SECTION("every reduced matrix is a unit-trace Hermitian operator") {
        for (const StateVector& s :
             {expected::input(), expected::post_query(), expected::output()}) {
            const ReducedDensity rho = partial_trace(s, k_qubits);
            REQUIRE(rho.trace() == Approx(1.0).margin(1e-9));
            REQUIRE(rho.hermiticity_error() <= 1e-12);
        }
    }

    SECTION("subset contract violations throw") {
        const StateVector in = expected::input();
        REQUIRE_THROWS_AS(partial_trace(in, {}), std::invalid_argument);
        REQUIRE_THROWS_AS(partial_trace(in, {0, 1, 2, 3, 4}), std::invalid_argument);
        REQUIRE_THROWS_AS(partial_trace(in, {0, 0}), std::invalid_argument);
        REQUIRE_THROWS_AS(partial_trace(in, {7}), std::invalid_argument);
    }
}

TEST_CASE("entanglement entropy separates product from maximally entangled") {
    RegisterLayout layout2(2);

    REQUIRE(entanglement_entropy(expected::input(), layout2.k_qubits()) ==
            Approx(0.0).margin(1e-9));
    REQUIRE(entanglement_entropy(expected::post_query(), layout2.k_qubits()) ==
            Approx(2.0).margin(1e-9));
    REQUIRE(entanglement_entropy(expected::post_query(), layout2.x_qubits()) ==
            Approx(2.0).margin(1e-9));
    REQUIRE(entanglement_entropy(expected::output(), layout2.k_qubits()) ==
            Approx(2.0).margin(1e-9));
    REQUIRE(entanglement_entropy(expected::input(), layout2.v_qubit()) ==
            Approx(0.0).margin(1e-9));

    // Independent cross-check: a Bell pair across (k0, x0) at n = 1 carries
    // exactly one bit of entanglement.
    RegisterLayout layout1(1);
    std::vector<Cx> bell(layout1.dim(), Cx{0.0, 0.0});
    bell[layout1.flat_index({0, 0, 0})] = Cx{1.0, 0.0};
    bell[layout1.flat_index({1, 1, 0})] = Cx{1.0, 0.0};
    const StateVector bell_state = StateVector::normalized(layout1, bell);
    REQUIRE(entanglement_entropy(bell_state, layout1.k_qubits()) ==
            Approx(1.0).margin(1e-9));
    REQUIRE(entanglement_entropy(bell_state, layout1.x_qubits()) ==
            Approx(1.0).margin(1e-9));

    // Entropy never exceeds the subsystem size in bits.
    for (const StateVector& s : {expected::post_query(), expected::output()}) {
        REQUIRE(entanglement_entropy(s, {0}) <= 1.0 + 1e-9);
        REQUIRE(entanglement_entropy(s, {0, 2, 4}) <= 3.0 + 1e-9);
    }
}

TEST_CASE("measurement honors forced and sampled modes") {
    const StateVector out = expected::output();
    const RegisterLayout layout = out.layout();

    SECTION("forcing K = 01 on the output collapses X onto the same drawer") {
        const MeasurementRecord k_meas = measure(out, layout.k_qubits(), Forced{1});
        REQUIRE(k_meas.outcome == 1);
        REQUIRE(k_meas.probability == Approx(0.25).margin(kAmpTol));
        REQUIRE(max_amplitude_diff(k_meas.post, expected::solved_k01()) <= kAmpTol);

        const MeasurementRecord x_meas =
            measure(k_meas.post, layout.x_qubits(), Forced{1});
        REQUIRE(x_meas.outcome == 1);
        REQUIRE(x_meas.probability == Approx(1.0).margin(kAmpTol));
    }

    SECTION("forcing an impossible outcome is a domain error") {
        REQUIRE_THROWS_AS(measure(expected::solved_k01(), layout.k_qubits(), Forced{3}),
                          std::domain_error);
        REQUIRE_THROWS_AS(measure(out, layout.k_qubits(), Forced{4}),
                          std::invalid_argument);  // too many bits, not zero mass
    }

    SECTION("sampling is deterministic per seed and spans the support") {
        const MeasurementRecord a = measure(out, layout.k_qubits(), Sampled{7});
        const MeasurementRecord b = measure(out, layout.k_qubits(), Sampled{7});
        REQUIRE(a.outcome == b.outcome);
        REQUIRE(a.probability == b.probability);
        REQUIRE(max_amplitude_diff(a.post, b.post) <= kAmpTol);

        std::set<Bits> seen;
        for (std::uint64_t seed = 0; seed < 64; ++seed) {
            const MeasurementRecord m = measure(out, layout.k_qubits(), Sampled{seed});
            REQUIRE(m.probability == Approx(0.25).margin(kAmpTol));
            seen.insert(m.outcome);
        }
        REQUIRE(seen == std::set<Bits>{0, 1, 2, 3});
    }

    SECTION("outcome probabilities sum to one and reject empty subsets") {
        const std::vector<double> p = outcome_probabilities(out, layout.k_qubits());
        double total = 0.0;
        for (double q : p) total += q;
        REQUIRE(total == Approx(1.0).margin(kAmpTol));
        REQUIRE_THROWS_AS(outcome_probabilities(out, {}), std::invalid_argument);
    }
}

TEST_CASE("joint outcome distributions are exact and order independent") {
    const StateVector out = expected::output();
    const RegisterLayout layout = out.layout();

    const JointDistribution kx = joint_outcome_distribution(
        out, {layout.k_qubits(), layout.x_qubits()});
    REQUIRE(kx.table.size() == 4);
    for (Bits k = 0; k < 4; ++k) {
        REQUIRE(kx.table.at({k, k}) == Approx(0.25).margin(kAmpTol));
    }

    // Listing the registers in the other order transposes the keys only.
    const JointDistribution xk = joint_outcome_distribution(
        out, {layout.x_qubits(), layout.k_qubits()});
    for (const auto& [key, p] : kx.table) {
        REQUIRE(xk.table.at({key[1], key[0]}) == Approx(p).margin(kAmpTol));
    }

    // Sequential route: P(K = k) * P(X = x | K = k) rebuilds the table.
    for (const auto& [key, p] : kx.table) {
        const MeasurementRecord k_meas = measure(out, layout.k_qubits(), Forced{key[0]});
        const std::vector<double> px =
            outcome_probabilities(k_meas.post, layout.x_qubits());
        REQUIRE(k_meas.probability * px[key[1]] == Approx(p).margin(kAmpTol));
    }

    REQUIRE_THROWS_AS(
        joint_outcome_distribution(out, {layout.k_qubits(), {1, 2}}),
        std::invalid_argument);
    REQUIRE_THROWS_AS(joint_outcome_distribution(out, {{}}), std::invalid_argument);
}

TEST_CASE("the V minus factor is detected, not assumed") {
    REQUIRE(has_v_minus_factor(expected::input()));
    REQUIRE(has_v_minus_factor(expected::post_query()));
    REQUIRE(has_v_minus_factor(expected::output()));
    REQUIRE(has_v_minus_factor(expected::solved_k01()));
    REQUIRE_FALSE(has_v_minus_factor(
        StateVector::basis_state(RegisterLayout(2), {0, 0, 0})));
}

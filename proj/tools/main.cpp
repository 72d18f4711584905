// groverlab CLI: runs each scenario and emits a human-readable or
// structured (JSON) report. Exit codes: 0 success, 2 usage error,
// 1 internal check failure.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "groverlab/groverlab.hpp"

namespace {

using namespace groverlab;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Bits parse_bits_or_usage(const std::string& s, int n, const std::string& flag) {
    try {
        return parse_bits(s, n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::string fraction_text(const Fraction& f) {
    std::ostringstream os;
    os << f.numerator();
    if (f.denominator() != 1) os << "/" << f.denominator();
    os << " (= " << boost::rational_cast<double>(f) << ")";
    return os.str();
}

std::string prob_text(double p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

void render_checks(std::ostream& out, const Report& r) {
    out << "checks:\n";
    for (const Check& c : r.checks) {
        out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "\n";
    }
}

void render_joint(std::ostream& out, const JointDistribution& dist,
                  const std::vector<std::string>& labels, int n) {
    for (const auto& [key, p] : dist.table) {
        out << "  ";
        for (std::size_t i = 0; i < key.size(); ++i) {
            out << labels[i] << "=" << format_bits(key[i], n) << " ";
        }
        out << " p=" << prob_text(p) << "\n";
    }
}

// ---------------------------------------------------------------------------
// grover
// ---------------------------------------------------------------------------

Report cmd_grover(int n, int iterations, const std::optional<std::string>& oracle_k,
                  std::uint64_t seed, std::ostream& text) {
    Report r;
    r.scenario = "grover";
    r.inputs = Json{{"n", n}, {"iterations", iterations}, {"seed", seed}};
    if (oracle_k) r.inputs["oracle_k"] = *oracle_k;

    std::optional<Bits> forced_k;
    if (oracle_k) forced_k = parse_bits_or_usage(*oracle_k, n, "--oracle-k");

    QueryCounter counter;
    const StateVector final_state = run_grover(n, iterations, counter);
    const RegisterLayout layout = final_state.layout();

    r.results["final_state"] = state_records(final_state);
    r.results["query_count"] = counter.count();

    const JointDistribution joint = joint_outcome_distribution(
        final_state, {layout.k_qubits(), layout.x_qubits()});
    r.results["joint_kx"] = joint_to_json(joint, {"k", "x"}, n);

    const KInvarianceReport inv =
        k_register_invariance_check(grover_pipeline(n, iterations), layout);

    r.checks.push_back({"norm_is_1", std::abs(final_state.norm() - 1.0) <= kAmpTol});
    r.checks.push_back({"query_count_equals_iterations",
                        counter.count() == iterations});
    r.checks.push_back({"k_register_invariant", inv.k_preserved});

    text << "grover search: n=" << n << ", iterations=" << iterations << "\n";
    text << "final state:\n" << render_state_text(final_state);
    text << "oracle queries: " << counter.count() << "\n";
    text << "joint (K,X) distribution:\n";
    render_joint(text, joint, {"k", "x"}, n);

    if (forced_k) {
        const MeasurementRecord k_meas =
            measure(final_state, layout.k_qubits(), Forced{*forced_k});
        const std::vector<double> x_probs =
            outcome_probabilities(k_meas.post, layout.x_qubits());
        Bits best_x = 0;
        for (Bits x = 0; x < x_probs.size(); ++x) {
            if (x_probs[x] > x_probs[best_x]) best_x = x;
        }
        r.results["oracle_choice"] =
            Json{{"k", format_bits(*forced_k, n)}, {"probability", k_meas.probability}};
        r.results["reduced_state"] = state_records(k_meas.post);
        r.results["solution"] = Json{{"x", format_bits(best_x, n)},
                                     {"probability", x_probs[best_x]}};
        r.checks.push_back({"solution_equals_oracle_choice", best_x == *forced_k});
        r.checks.push_back({"solution_probability_is_1",
                            std::abs(x_probs[best_x] - 1.0) <= kAmpTol});

        text << "oracle choice forced: k=" << format_bits(*forced_k, n)
             << "  (probability " << prob_text(k_meas.probability) << ")\n";
        text << "reduced state:\n" << render_state_text(k_meas.post);
        text << "solution: x=" << format_bits(best_x, n) << " with probability "
             << prob_text(x_probs[best_x]) << "\n";
    }
    return r;
}

// ---------------------------------------------------------------------------
// histories
// ---------------------------------------------------------------------------

Report cmd_histories(int n, const std::string& known_bit, const std::string& query_str,
                     std::ostream& text) {
    Report r;
    r.scenario = "histories";
    r.inputs = Json{{"n", n}, {"known_bit", known_bit}, {"query", query_str}};

    AdvancedInfo info;
    try {
        info = AdvancedInfo::parse(known_bit, n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--known-bit: ") + e.what());
    }
    const Bits query = parse_bits_or_usage(query_str, n, "--query");
    if (!info.contains(query)) {
        throw UsageError("--query: " + query_str + " is not in the candidate set of " +
                         info.describe());
    }

    const std::vector<History> histories = enumerate_histories(info, query);

    Json hs = Json::array();
    bool invariant_ok = true;
    for (const History& h : histories) {
        hs.push_back(history_to_json(h, n));
        invariant_ok = invariant_ok && h.s_out.k == h.s_in.k && h.s_out.x == h.s_in.x;
    }
    r.results["histories"] = hs;

    Json candidates = Json::array();
    Json runs = Json::array();
    bool runs_ok = true;
    for (Bits c : info.candidates()) {
        candidates.push_back(format_bits(c, n));
        const ClassicalRunRecord rec = advanced_classical_search(info, c);
        runs.push_back(run_record_to_json(rec, n));
        runs_ok = runs_ok && rec.solution == c && rec.query_count == 1;
    }
    r.results["candidates"] = candidates;
    r.results["classical_runs"] = runs;

    r.checks.push_back({"histories_preserve_k_and_x", invariant_ok});
    r.checks.push_back({"each_candidate_found_with_1_query", runs_ok});

    text << "advance information: " << info.describe() << "   candidates:";
    for (Bits c : info.candidates()) text << " " << format_bits(c, n);
    text << "\nquery: x=" << format_bits(query, n) << "\n";
    for (std::size_t i = 0; i < histories.size(); ++i) {
        text << "history #" << (i + 1) << ":  "
             << render_history_text(histories[i], n) << "\n";
    }
    text << "classical runs (one per candidate oracle choice):\n";
    for (const Json& run : runs) {
        text << "  oracle k=" << run["oracle_k"].get<std::string>() << "  queried";
        for (const Json& q : run["queries"]) {
            text << " x=" << q["x"].get<std::string>() << " (delta="
                 << q["delta"].get<int>() << ")";
        }
        text << "  ->  solution " << run["solution"].get<std::string>() << ", "
             << run["query_count"].get<int>() << " query\n";
    }
    return r;
}

// ---------------------------------------------------------------------------
// phases
// ---------------------------------------------------------------------------

Report cmd_phases(int n, std::ostream& text) {
    if (n > 3) {
        throw UsageError("--n: reconstruction is supported for n <= 3 (got " +
                         std::to_string(n) + ")");
    }
    Report r;
    r.scenario = "phases";
    r.inputs = Json{{"n", n}};

    const auto [sum_in, sum_out] =
        reconstruct(derive_phases(n), full_history_space(n));
    const StateVector expected_in = make_uniform_input(n);
    QueryCounter scratch;
    const StateVector expected_out = oracle_apply(expected_in, scratch);

    const double diff_in = max_amplitude_diff(sum_in, expected_in);
    const double diff_out = max_amplitude_diff(sum_out, expected_out);
    r.results["reconstruction"] =
        Json{{"input_max_diff", diff_in}, {"output_max_diff", diff_out}};
    r.checks.push_back({"reconstructs_prepared_input", diff_in <= kAmpTol});
    r.checks.push_back({"reconstructs_post_query_state", diff_out <= kAmpTol});

    text << "phase-sum reconstruction (n=" << n << "):\n";
    text << "  weighted input sum  vs prepared input:   max |diff| = " << diff_in
         << "\n";
    text << "  weighted output sum vs post-query state: max |diff| = " << diff_out
         << "\n";

    if (n == 2) {
        const EntanglementSearchReport search = entanglement_max_search();
        r.results["entanglement_search"] =
            Json{{"cases", search.cases},
                 {"max_entropy_bits", search.max_entropy},
                 {"maximizer_count", search.maximizer_count},
                 {"quantum_entropy_bits", search.quantum_entropy},
                 {"quantum_attains_max", search.quantum_attains_max}};
        r.checks.push_back({"quantum_phases_maximize_entanglement",
                            search.quantum_attains_max});
        r.checks.push_back(
            {"max_entropy_is_2_bits", std::abs(search.max_entropy - 2.0) <= 1e-9});

        text << "entanglement search over " << search.cases
             << " sign assignments:\n";
        text << "  max S(rho_K) = " << search.max_entropy << " bits, attained by "
             << search.maximizer_count << " assignments\n";
        text << "  quantum assignment: " << search.quantum_entropy << " bits ("
             << (search.quantum_attains_max ? "maximal" : "not maximal") << ")\n";
    }
    return r;
}

// ---------------------------------------------------------------------------
// querycount
// ---------------------------------------------------------------------------

Report cmd_querycount(int n, std::ostream& text) {
    Report r;
    r.scenario = "querycount";
    r.inputs = Json{{"n", n}};

    const QueryTable table = expected_query_table(n);
    r.results["query_table"] = Json{{"plain_average", fraction_to_json(table.plain_average)},
                                    {"plain_worst", table.plain_worst},
                                    {"advanced", fraction_to_json(table.advanced_average)},
                                    {"quantum", table.quantum}};

    // Order independence of the plain average, exhaustive over strategies.
    bool order_independent = true;
    if (n <= 3) {
        std::vector<Bits> order = ascending_order(n);
        std::sort(order.begin(), order.end());
        do {
            long long total = 0;
            for (Bits k = 0; k < order.size(); ++k) {
                total += plain_classical_search(order, k).query_count;
            }
            if (Fraction(total, static_cast<long long>(order.size())) !=
                table.plain_average) {
                order_independent = false;
                break;
            }
        } while (std::next_permutation(order.begin(), order.end()));
        r.results["plain_average_order_independent"] = order_independent;
        r.checks.push_back({"plain_average_order_independent", order_independent});
    }

    if (n == 2) {
        r.checks.push_back({"plain_average_is_9_4",
                            table.plain_average == Fraction(9, 4)});
        r.checks.push_back({"plain_worst_is_3", table.plain_worst == 3});
        r.checks.push_back({"advanced_is_1", table.advanced_average == Fraction(1)});
        r.checks.push_back({"quantum_is_1", table.quantum == 1});
    }

    text << "oracle-query table (n=" << n << "):\n";
    text << "  plain classical average: " << fraction_text(table.plain_average) << "\n";
    text << "  plain classical worst:   " << table.plain_worst << "\n";
    text << "  with advance information: " << fraction_text(table.advanced_average)
         << "\n";
    text << "  quantum: " << table.quantum << "\n";
    return r;
}

// ---------------------------------------------------------------------------
// boolean
// ---------------------------------------------------------------------------

Report cmd_boolean(const std::optional<std::string>& fixed_k_str, std::uint64_t seed,
                   std::ostream& text) {
    Report r;
    r.scenario = "boolean";
    r.inputs = Json{{"seed", seed}};
    if (fixed_k_str) r.inputs["fixed_k"] = *fixed_k_str;

    std::optional<Bits> fixed_k;
    if (fixed_k_str) fixed_k = parse_bits_or_usage(*fixed_k_str, 2, "--fixed-k");

    // Satisfying assignments, with and without the fixing.
    const PartialAssignment fixing =
        fixed_k ? PartialAssignment::fix_k(*fixed_k) : PartialAssignment{};
    const std::vector<NetworkAssignment> sat = satisfying_assignments(fixing);
    Json sat_json = Json::array();
    bool all_k_eq_x = true;
    for (const NetworkAssignment& a : sat) {
        sat_json.push_back(Json{{"k0", a.k0}, {"k1", a.k1}, {"x0", a.x0},
                                {"x1", a.x1}, {"y0", a.y0}, {"y1", a.y1},
                                {"delta", a.delta}});
        all_k_eq_x = all_k_eq_x && a.k0 == a.x0 && a.k1 == a.x1;
    }
    r.results["satisfying_assignments"] = sat_json;
    r.checks.push_back({"satisfying_assignments_have_x_equal_k", all_k_eq_x});
    r.checks.push_back({fixed_k ? "exactly_one_solution" : "four_solutions",
                        sat.size() == (fixed_k ? 1u : 4u)});

    // Trial counts.
    const std::vector<Bits> ascending{0, 1, 2, 3};
    const TrialCount trials = classical_trial_count(fixed_k, ascending);
    const Fraction over_orders = average_trials_over_orders(fixed_k);
    r.results["trials"] = Json{{"ascending_order", fraction_to_json(trials.expected)},
                               {"worst", trials.worst},
                               {"averaged_over_orders", fraction_to_json(over_orders)}};
    r.checks.push_back({"average_over_orders_is_9_4", over_orders == Fraction(9, 4)});

    // Quantum satisfaction.
    QueryCounter counter;
    const StateVector out = run_grover(2, 1, counter);
    if (fixed_k) {
        const MeasurementRecord k_meas =
            measure(out, out.layout().k_qubits(), Forced{*fixed_k});
        const SatisfactionReport sr = verify_quantum_satisfaction(k_meas.post);
        r.results["quantum"] = Json{{"mass_on_delta1", sr.mass_on_delta1},
                                    {"support_size", sr.support_size}};
        r.checks.push_back({"support_size_is_1", sr.support_size == 1});

        // Definite but still produced by the sampler: every seeded draw of X
        // yields the same solution.
        bool definite = true;
        Json draws = Json::array();
        for (std::uint64_t s = seed; s < seed + 8; ++s) {
            const MeasurementRecord m =
                measure(k_meas.post, out.layout().x_qubits(), Sampled{s});
            draws.push_back(format_bits(m.outcome, 2));
            definite = definite && m.outcome == *fixed_k;
        }
        r.results["sampled_x_outcomes"] = draws;
        r.checks.push_back({"sampled_outcome_always_equals_fixed_k", definite});
    } else {
        const SatisfactionReport sr = verify_quantum_satisfaction(out);
        r.results["quantum"] = Json{{"mass_on_delta1", sr.mass_on_delta1},
                                    {"support_size", sr.support_size}};
        r.checks.push_back({"network_satisfied_with_probability_1",
                            std::abs(sr.mass_on_delta1 - 1.0) <= kAmpTol});
        r.checks.push_back({"support_size_is_4", sr.support_size == 4});
    }

    text << "boolean network: delta = AND(y0,y1), y0 = ~XOR(k0,x0), y1 = ~XOR(k1,x1), delta = 1\n";
    if (fixed_k) {
        text << "fixed k = " << format_bits(*fixed_k, 2) << "\n";
    }
    text << "satisfying assignments (" << sat.size() << "):\n";
    for (const NetworkAssignment& a : sat) {
        text << "  k=" << a.k0 << a.k1 << " x=" << a.x0 << a.x1 << "  (y0=" << a.y0
             << ", y1=" << a.y1 << ", delta=" << a.delta << ")\n";
    }
    text << "classical trials: ascending order " << fraction_text(trials.expected)
         << ", worst " << trials.worst << ", averaged over all 24 orders "
         << fraction_text(over_orders) << "\n";
    const Json& q = r.results["quantum"];
    text << "quantum satisfaction: mass on delta=1 = "
         << prob_text(q["mass_on_delta1"].get<double>()) << ", support size "
         << q["support_size"].get<std::size_t>() << "\n";
    return r;
}

// ---------------------------------------------------------------------------
// epr
// ---------------------------------------------------------------------------

Report cmd_epr(std::uint64_t seed, std::ostream& text) {
    Report r;
    r.scenario = "epr";
    r.inputs = Json{{"seed", seed}};

    const TwoPhotonState singlet = make_singlet();
    Json amps = Json::array();
    for (int idx = 0; idx < 4; ++idx) {
        const Cx a = singlet.amp[static_cast<std::size_t>(idx)];
        if (std::abs(a) < kAmpTol) continue;
        amps.push_back(Json{{"l", (idx >> 1) & 1}, {"r", idx & 1},
                            {"re", a.real()}, {"im", a.imag()}});
    }
    r.results["singlet"] = amps;

    const BackdatingReport b = backdating_equivalence_check();
    Json joint = Json::array();
    for (int idx = 0; idx < 4; ++idx) {
        joint.push_back(Json{{"l", (idx >> 1) & 1}, {"r", idx & 1},
                             {"measure_at_T", b.joint_measure_at_T[static_cast<std::size_t>(idx)]},
                             {"backdated", b.joint_backdated[static_cast<std::size_t>(idx)]}});
    }
    r.results["joint_distribution"] = joint;
    r.results["pipeline_max_diff"] =
        Json{{"outcome_0", b.pipeline_diff[0]}, {"outcome_1", b.pipeline_diff[1]}};

    // One seeded run through the sampler.
    const PhotonMeasurement left =
        measure_photon(evolve_to_T(singlet), Photon::Left, Sampled{seed});
    const PhotonMeasurement right =
        measure_photon(left.post, Photon::Right, Sampled{seed + 1});
    r.results["sampled_run"] = Json{{"left", left.outcome}, {"right", right.outcome}};

    r.checks.push_back({"perfect_anticorrelation", b.anticorrelated});
    r.checks.push_back({"backdated_reduction_matches_measurement_at_T",
                        b.pipelines_agree[0] && b.pipelines_agree[1]});
    r.checks.push_back({"joint_distributions_equal", b.joints_equal});
    r.checks.push_back({"sampled_outcomes_anticorrelated",
                        left.outcome != right.outcome});

    text << "two-photon singlet: (|0>_L|1>_R - |1>_L|0>_R)/sqrt(2)\n";
    text << "joint (L,R) distribution (both pipelines):\n";
    for (int idx = 0; idx < 4; ++idx) {
        text << "  L=" << ((idx >> 1) & 1) << " R=" << (idx & 1)
             << "  measure-at-T p=" << prob_text(b.joint_measure_at_T[static_cast<std::size_t>(idx)])
             << "  backdated p=" << prob_text(b.joint_backdated[static_cast<std::size_t>(idx)]) << "\n";
    }
    text << "backdated vs measured amplitudes: max |diff| = "
         << std::max(b.pipeline_diff[0], b.pipeline_diff[1]) << "\n";
    text << "sampled run (seed " << seed << "): L=" << left.outcome
         << ", R=" << right.outcome << "\n";
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact desk-scale simulator of the N=4 drawer-search algorithm,\n"
                 "its classical-history decomposition, query accounting, Boolean-\n"
                 "network form, and a two-photon backdated-reduction model."};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string("groverlab ") + kVersion);

    std::string format = "text";
    std::uint64_t seed = 0;
    app.add_option("--format", format, "Output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", seed, "Seed for sampled measurements (default 0)");

    int grover_n = 2, grover_iterations = 1;
    std::string oracle_k;
    CLI::App* grover = app.add_subcommand("grover", "Run the search algorithm");
    grover->add_option("--n", grover_n, "Search-register size")->check(CLI::Range(1, 10));
    grover->add_option("--iterations", grover_iterations, "Oracle+rotation rounds")
        ->check(CLI::Range(1, 1000));
    grover->add_option("--oracle-k", oracle_k, "Force the oracle's choice (bitstring)");

    int hist_n = 2;
    std::string known_bit, query;
    CLI::App* histories = app.add_subcommand("histories", "Enumerate the classical histories");
    histories->add_option("--n", hist_n, "Search-register size")->check(CLI::Range(1, 10));
    histories->add_option("--known-bit", known_bit, "Advance information, e.g. k0=0")
        ->required();
    histories->add_option("--query", query, "Queried drawer (bitstring)")->required();

    int phases_n = 2;
    CLI::App* phases = app.add_subcommand("phases", "Phase-sum reconstruction and entanglement search");
    phases->add_option("--n", phases_n, "Search-register size (max 3)")
        ->check(CLI::Range(1, 64));

    int qc_n = 2;
    CLI::App* querycount = app.add_subcommand("querycount", "Classical vs quantum oracle-query costs");
    querycount->add_option("--n", qc_n, "Search-register size")->check(CLI::Range(1, 10));

    std::string fixed_k;
    CLI::App* boolean_cmd = app.add_subcommand("boolean", "Boolean-network form of the search problem");
    boolean_cmd->add_option("--fixed-k", fixed_k, "Fix the oracle bits (bitstring)");

    CLI::App* epr = app.add_subcommand("epr", "Two-photon singlet and backdated reduction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cout, std::cerr);
        return 2;
    }

    try {
        std::ostringstream text;
        Report report;
        if (grover->parsed()) {
            report = cmd_grover(grover_n, grover_iterations,
                                grover->count("--oracle-k") ? std::optional(oracle_k)
                                                           : std::nullopt,
                                seed, text);
        } else if (histories->parsed()) {
            report = cmd_histories(hist_n, known_bit, query, text);
        } else if (phases->parsed()) {
            report = cmd_phases(phases_n, text);
        } else if (querycount->parsed()) {
            report = cmd_querycount(qc_n, text);
        } else if (boolean_cmd->parsed()) {
            report = cmd_boolean(
                boolean_cmd->count("--fixed-k") ? std::optional(fixed_k) : std::nullopt,
                seed, text);
        } else if (epr->parsed()) {
            report = cmd_epr(seed, text);
        }
        report.inputs["format"] = format;

        if (format == "structured") {
            std::cout << report.dump();
        } else {
            std::cout << text.str();
            render_checks(std::cout, report);
        }
        return report.all_checks_pass() ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

// Command implementations behind the eqc tool. Argument parsing lives in
// tools/eqc.cpp; everything here is callable in-process.

#include <fstream>
#include <optional>
#include <sstream>
#include <variant>
#include <string>
#include <vector>

#include "eqc/dense.hpp"
#include "eqc/errors.hpp"
#include "eqc/io.hpp"
#include "eqc/lattice.hpp"
#include "eqc/quantum_numbers.hpp"
#include "eqc/synthesis.hpp"
#include "eqc/tableau.hpp"
#include "eqc/verify.hpp"

namespace eqc {

/// Correlation suites are quadratic in the qubit count and exponential in
/// dense mode; verify runs them only up to this size.
inline constexpr std::size_t correlation_qubit_cap = 12;

struct RunConfig {
    std::string geometry;
    int n = 0;
    int n1 = 0;
    int n2 = 0;
    int nodes = 0;
    /// "1-2,2-3" with 1-based node numbers.
    std::string bonds;
    double coupling_iz = -1.0;
    double coupling_ix = -1.0;
    std::string couplings_file;
    /// "all-plus", "random" or a path to a qnums JSON file.
    std::string qnums = "all-plus";
    std::uint64_t seed = 1;
    /// "dense", "tableau" or "both".
    std::string engine = "dense";
    std::optional<int> chi;
    std::optional<int> zeta;
    std::optional<double> theta_u;
    std::optional<double> theta_v;
    std::string out;
    std::string qasm_out;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline json read_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline std::vector<std::pair<int, int>> parse_bonds(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto dash = item.find('-');
        try {
            if (dash == std::string::npos) throw std::invalid_argument(item);
            out.emplace_back(std::stoi(item.substr(0, dash)) - 1, std::stoi(item.substr(dash + 1)) - 1);
        } catch (const std::logic_error&) {
            throw ParseError("bad bond \"" + item + "\"; expected a-b with 1-based node numbers, e.g. --bonds 1-2,2-3");
        }
    }
    if (out.empty()) throw ParseError("graph needs --bonds, e.g. --bonds 1-2,2-3");
    return out;
}

inline ModelSpec make_model(const RunConfig& cfg) {
    CouplingSpec couplings = Uniform{cfg.coupling_iz, cfg.coupling_ix};
    if (!cfg.couplings_file.empty()) {
        const json j = read_json_file(cfg.couplings_file);
        if (j.value("schema", "") != schema_version || j.value("kind", "") != "couplings") {
            throw ParseError(cfg.couplings_file + ": expected {\"schema\": \"v1\", \"kind\": \"couplings\", \"values\": {...}}");
        }
        PerTerm per;
        for (const auto& [label, v] : j.at("values").items()) per.values[label] = v.get<double>();
        couplings = per;
    }
    const auto& g = cfg.geometry;
    if (g == "trestle") {
        if (cfg.n < 2) throw GeometryError("trestle needs --n >= 2");
        return build_trestle(cfg.n, couplings);
    }
    if (g == "graph") {
        if (cfg.nodes < 1) throw GeometryError("graph needs --nodes >= 1");
        return build_graph(cfg.nodes, parse_bonds(cfg.bonds), couplings);
    }
    if (g == "cylinder" || g == "sheet" || g == "torus") {
        if (cfg.n1 < 2 || cfg.n2 < 2) throw GeometryError(g + " needs --n1 >= 2 and --n2 >= 2");
        if (g == "cylinder") return build_cylinder(cfg.n1, cfg.n2, couplings);
        if (g == "sheet") return build_sheet(cfg.n1, cfg.n2, couplings);
        return build_torus(cfg.n1, cfg.n2, couplings);
    }
    throw GeometryError("unknown --geometry \"" + g + "\"; use trestle, graph, cylinder, sheet or torus");
}

inline QuantumNumbers make_quantum_numbers(const ModelSpec& m, const RunConfig& cfg) {
    QuantumNumbers q;
    if (cfg.qnums == "all-plus") {
        q = all_plus(m);
    } else if (cfg.qnums == "random") {
        q = random_quantum_numbers(m, cfg.seed);
    } else {
        q = quantum_numbers_from_json(m, read_json_file(cfg.qnums));
    }
    const bool extras = cfg.chi || cfg.zeta || cfg.theta_u || cfg.theta_v;
    if (extras && !m.is_torus()) throw MismatchError("--chi, --zeta, --theta-u and --theta-v apply to a torus only");
    if (q.torus) {
        if (cfg.chi) q.torus->chi = *cfg.chi;
        if (cfg.zeta) q.torus->zeta = *cfg.zeta;
        if (cfg.theta_u) q.torus->theta_u = *cfg.theta_u;
        if (cfg.theta_v) q.torus->theta_v = *cfg.theta_v;
    }
    validate(m, q);
    return q;
}

inline std::vector<Engine> engines(const RunConfig& cfg) {
    if (cfg.engine == "dense") return {Engine::dense};
    if (cfg.engine == "tableau") return {Engine::tableau};
    if (cfg.engine == "both") return {Engine::dense, Engine::tableau};
    throw MismatchError("unknown --engine \"" + cfg.engine + "\"; use dense, tableau or both");
}

inline void check_engine_limits(const ModelSpec& m, const QuantumNumbers& q, const std::vector<Engine>& list) {
    for (auto e : list) {
        if (e == Engine::dense && m.n_qubits() > max_dense_qubits) {
            throw SizeError("model has " + std::to_string(m.n_qubits()) + " qubits; the dense engine handles at most " +
                            std::to_string(max_dense_qubits) + ", use --engine tableau");
        }
        if (e == Engine::tableau && q.torus && (q.torus->theta_u != 0.0 || q.torus->theta_v != 0.0)) {
            throw UnsupportedGateError("the tableau engine needs --theta-u 0 --theta-v 0; use --engine dense for rotations");
        }
    }
}

inline std::string cmd_build(const RunConfig& cfg) { return model_to_json(make_model(cfg)).dump(2) + "\n"; }

/// Circuit JSON; fills *qasm with OpenQASM text that starts from |0...0>.
inline std::string cmd_circuit(const RunConfig& cfg, std::string* qasm = nullptr) {
    const ModelSpec m = make_model(cfg);
    const QuantumNumbers q = make_quantum_numbers(m, cfg);
    const StatePreparation p = prepare_eigenstate(m, q);
    if (qasm) *qasm = to_qasm(with_input_layer(p), m.qubit_labels());
    return preparation_to_json(p).dump(2) + "\n";
}

inline std::string cmd_counts(const RunConfig& cfg) {
    const ModelSpec m = make_model(cfg);
    const QuantumNumbers q = make_quantum_numbers(m, cfg);
    return counts_to_json(prepare_eigenstate(m, q).circuit).dump(2) + "\n";
}

/// Eigenstate checks on each engine, oracle fidelities where an oracle
/// exists, correlation suites on small models, the fourfold degeneracy on
/// dense-sized tori, and engine agreement when both engines run. Sorted by
/// check name.
inline VerificationReport cmd_verify(const RunConfig& cfg) {
    const ModelSpec m = make_model(cfg);
    const QuantumNumbers q = make_quantum_numbers(m, cfg);
    const auto list = engines(cfg);
    check_engine_limits(m, q, list);
    const StatePreparation p = prepare_eigenstate(m, q);
    const bool small = m.n_qubits() <= correlation_qubit_cap;
    VerificationReport r;
    std::optional<DenseState> dense;
    std::optional<Tableau> tab;
    for (auto e : list) {
        const std::string prefix = std::string(engine_name(e)) + "/";
        r.merge(eigenstate_check(m, q, p, e), prefix);
        if (e == Engine::dense) {
            dense = simulate_dense(p.circuit, p.input);
            if (small) r.merge(correlation_suite(*dense, m, q, 1e-10), prefix + "correlation/");
        } else {
            tab = simulate_tableau(p.circuit, p.input);
            if (small) r.merge(correlation_suite(*tab, m, q, 0.0), prefix + "correlation/");
        }
    }
    if (dense) {
        if (std::holds_alternative<Trestle>(m.geometry()) && std::get<Trestle>(m.geometry()).n <= 10) {
            r.add("oracle/matrix-product fidelity", fidelity(*dense, mps_trestle_state(m, q)), 1.0, 1e-10);
        }
        if (std::holds_alternative<Graph>(m.geometry()) && m.n_qubits() <= 20) {
            r.add("oracle/graph amplitude fidelity", fidelity(*dense, graph_state_amplitudes(m, q)), 1.0, 1e-10);
        }
        if (m.is_torus()) r.merge(torus_degeneracy_check(m, q), "degeneracy/");
    }
    if (dense && tab) {
        for (const auto& t : m.terms()) {
            r.add("agree/term " + t.label, dense->expectation(t.op), tab->expectation(t.op), 1e-10);
        }
    }
    r.sort();
    return r;
}

}  // namespace eqc

#pragma once

// JSON exchange formats. Every document carries "schema": "v1".

#include <json.hpp>

#include <string>
#include <vector>

#include "eqc/circuit.hpp"
#include "eqc/errors.hpp"
#include "eqc/lattice.hpp"
#include "eqc/quantum_numbers.hpp"
#include "eqc/synthesis.hpp"
#include "eqc/verify.hpp"

namespace eqc {

using json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "v1";

namespace detail {

inline void require_schema(const json& j, const char* kind) {
    if (!j.is_object() || j.value("schema", "") != schema_version) {
        throw ParseError(std::string(kind) + " document needs \"schema\": \"v1\"");
    }
    if (j.value("kind", "") != kind) throw ParseError(std::string("expected a ") + kind + " document");
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("bad value for \"") + key + "\"");
    }
}

}  // namespace detail

inline json geometry_to_json(const Geometry& g) {
    json j;
    j["type"] = geometry_name(g);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Trestle>) {
                j["n"] = v.n;
            } else if constexpr (std::is_same_v<T, Graph>) {
                j["nodes"] = v.nodes;
                json bonds = json::array();
                for (auto [a, b] : v.bonds) bonds.push_back({a + 1, b + 1});
                j["bonds"] = bonds;
            } else {
                j["n1"] = v.n1;
                j["n2"] = v.n2;
            }
        },
        g);
    return j;
}

/// Builds the model named by a geometry object with the given couplings.
inline ModelSpec model_from_geometry(const json& g, const CouplingSpec& couplings) {
    const auto type = detail::field<std::string>(g, "type");
    if (type == "trestle") return build_trestle(detail::field<int>(g, "n"), couplings);
    if (type == "graph") {
        std::vector<std::pair<int, int>> bonds;
        for (const auto& b : detail::field<std::vector<std::vector<int>>>(g, "bonds")) {
            if (b.size() != 2) throw ParseError("a bond is a pair of 1-based node numbers");
            bonds.emplace_back(b[0] - 1, b[1] - 1);
        }
        return build_graph(detail::field<int>(g, "nodes"), std::move(bonds), couplings);
    }
    const int n1 = detail::field<int>(g, "n1"), n2 = detail::field<int>(g, "n2");
    if (type == "cylinder") return build_cylinder(n1, n2, couplings);
    if (type == "sheet") return build_sheet(n1, n2, couplings);
    if (type == "torus") return build_torus(n1, n2, couplings);
    throw ParseError("unknown geometry type " + type);
}

inline json model_to_json(const ModelSpec& m) {
    json j;
    j["schema"] = schema_version;
    j["kind"] = "model";
    j["geometry"] = geometry_to_json(m.geometry());
    j["n_qubits"] = m.n_qubits();
    j["qubit_labels"] = m.qubit_labels();
    json terms = json::array();
    for (const auto& t : m.terms()) {
        terms.push_back({{"label", t.label},
                         {"type", t.kind == TermKind::x ? "X" : "Z"},
                         {"op", to_text(t.op)},
                         {"coupling", t.coupling}});
    }
    j["terms"] = terms;
    json constraints = json::array();
    for (const auto& c : m.constraints()) constraints.push_back(c.labels);
    j["constraints"] = constraints;
    return j;
}

/// Rebuilds the model from its geometry and per-term couplings, then checks
/// that every stored operator agrees with the rebuilt one.
inline ModelSpec model_from_json(const json& j) {
    detail::require_schema(j, "model");
    PerTerm couplings;
    const json& terms = j.at("terms");
    for (const auto& t : terms) couplings.values[detail::field<std::string>(t, "label")] = detail::field<double>(t, "coupling");
    ModelSpec m = model_from_geometry(j.at("geometry"), couplings);
    if (terms.size() != m.terms().size()) throw ParseError("term list does not match the geometry");
    for (const auto& t : terms) {
        const auto label = detail::field<std::string>(t, "label");
        if (!m.has_term(label)) throw ParseError("unknown term " + label);
        if (to_text(m.term(label).op) != detail::field<std::string>(t, "op")) {
            throw ParseError("operator of " + label + " does not match the geometry");
        }
    }
    return m;
}

inline json quantum_numbers_to_json(const ModelSpec& m, const QuantumNumbers& q) {
    json j;
    j["schema"] = schema_version;
    j["kind"] = "qnums";
    json values = json::object();
    for (std::size_t i = 0; i < m.terms().size(); ++i) values[m.terms()[i].label] = q.values.at(i);
    j["values"] = values;
    if (q.torus) {
        j["torus"] = {{"chi", q.torus->chi},
                      {"zeta", q.torus->zeta},
                      {"theta_u", q.torus->theta_u},
                      {"theta_v", q.torus->theta_v}};
    }
    return j;
}

/// Values may omit the two torus reference terms; they are completed from the
/// others. Missing torus extras default to chi = zeta = 1 and zero angles.
inline QuantumNumbers quantum_numbers_from_json(const ModelSpec& m, const json& j) {
    detail::require_schema(j, "qnums");
    QuantumNumbers q = all_plus(m);
    const json& values = j.at("values");
    for (const auto& [label, v] : values.items()) {
        if (!m.has_term(label)) throw ParseError("quantum number for unknown term " + label);
        q.set(m, label, v.get<int>());
    }
    for (const auto& t : m.terms()) {
        const bool reference = m.is_torus() && (t.label == torus_x_reference() || t.label == torus_z_reference());
        if (!values.contains(t.label) && !reference) throw ParseError("missing quantum number for " + t.label);
    }
    if (m.is_torus()) {
        if (j.contains("torus")) {
            const json& t = j.at("torus");
            q.torus->chi = t.value("chi", 1);
            q.torus->zeta = t.value("zeta", 1);
            q.torus->theta_u = t.value("theta_u", 0.0);
            q.torus->theta_v = t.value("theta_v", 0.0);
        }
        const bool explicit_refs = values.contains(torus_x_reference()) || values.contains(torus_z_reference());
        if (!explicit_refs) complete_torus_references(m, q);
    } else if (j.contains("torus")) {
        throw ParseError("torus extras given for a non-torus model");
    }
    validate(m, q);
    return q;
}

inline json circuit_to_json(const Circuit& c) {
    json j;
    j["schema"] = schema_version;
    j["kind"] = "circuit";
    j["n_qubits"] = c.n_qubits();
    json layers = json::array();
    for (const auto& layer : c.layers()) {
        json l = json::array();
        for (const auto& g : layer) {
            json jg;
            jg["kind"] = gate_name(g.kind);
            jg["qubits"] = g.two_qubit() ? json::array({g.q0, g.q1}) : json::array({g.q0});
            if (g.kind == GateKind::ry) jg["theta"] = g.theta;
            if (!c.tags()[g.tag].empty()) jg["tag"] = c.tags()[g.tag];
            l.push_back(jg);
        }
        layers.push_back(l);
    }
    j["layers"] = layers;
    return j;
}

inline Circuit circuit_from_json(const json& j) {
    detail::require_schema(j, "circuit");
    const auto n = detail::field<std::size_t>(j, "n_qubits");
    std::vector<std::string> tags{""};
    std::vector<Layer> layers;
    for (const auto& jl : j.at("layers")) {
        Layer layer;
        for (const auto& jg : jl) {
            Gate g;
            g.kind = gate_kind_from_name(detail::field<std::string>(jg, "kind"));
            const auto qs = detail::field<std::vector<std::uint32_t>>(jg, "qubits");
            if (qs.size() != g.arity()) throw ParseError("wrong qubit count for gate " + std::string(gate_name(g.kind)));
            g.q0 = qs[0];
            if (g.two_qubit()) g.q1 = qs[1];
            g.theta = jg.value("theta", 0.0);
            const std::string tag = jg.value("tag", "");
            auto it = std::find(tags.begin(), tags.end(), tag);
            if (it == tags.end()) it = tags.insert(tags.end(), tag);
            g.tag = static_cast<std::uint32_t>(it - tags.begin());
            layer.push_back(g);
        }
        layers.push_back(std::move(layer));
    }
    return Circuit(n, std::move(layers), std::move(tags));
}

/// Circuit plus the input product state it acts on.
inline json preparation_to_json(const StatePreparation& p) {
    json j = circuit_to_json(p.circuit);
    j["input"] = p.input;
    return j;
}

inline StatePreparation preparation_from_json(const json& j) {
    StatePreparation p{circuit_from_json(j), detail::field<std::vector<int>>(j, "input")};
    if (p.input.size() != p.circuit.n_qubits()) throw ParseError("input length differs from the qubit count");
    return p;
}

inline json check_to_json(const Check& c) {
    return {{"schema", schema_version},
            {"check", c.name},
            {"pass", c.pass},
            {"measured", c.measured},
            {"expected", c.expected},
            {"tol", c.tol}};
}

inline Check check_from_json(const json& j) {
    if (j.value("schema", "") != schema_version) throw ParseError("report line needs \"schema\": \"v1\"");
    return {detail::field<std::string>(j, "check"), detail::field<bool>(j, "pass"), detail::field<double>(j, "measured"),
            detail::field<double>(j, "expected"), detail::field<double>(j, "tol")};
}

/// One JSON object per line.
inline std::string report_to_jsonl(const VerificationReport& r) {
    std::string out;
    for (const auto& c : r.checks) out += check_to_json(c).dump() + "\n";
    return out;
}

inline VerificationReport report_from_jsonl(const std::string& text) {
    VerificationReport r;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(start, end - start);
        if (!line.empty()) {
            try {
                r.checks.push_back(check_from_json(json::parse(line)));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(std::string("bad report line: ") + e.what());
            }
        }
        start = end + 1;
    }
    return r;
}

inline json counts_to_json(const Circuit& c) {
    const GateCounts g = gate_counts(c);
    return {{"schema", schema_version},
            {"kind", "counts"},
            {"hadamards", count_of(g, GateKind::h)},
            {"cnots", count_of(g, GateKind::cnot)},
            {"rotations", count_of(g, GateKind::ry)},
            {"depth", c.depth()}};
}

}  // namespace eqc

#pragma once

// Layered gate circuits.
//
// A Circuit is a list of layers; gates inside one layer act on disjoint
// qubits. Circuits are produced by CircuitBuilder, which places each gate in
// the earliest layer allowed by
//   * stage barriers: a gate never lands before the first layer of its stage;
//   * qubit order: in ordered stages a gate lands after every earlier gate
//     touching one of its qubits;
//   * chains: gates added on the same chain run strictly one after another,
//     even when they touch different qubits.
// In commuting stages every gate of the stage commutes with every other, so a
// gate may fill any earlier layer of the stage in which its qubits are free.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>
#include <string>
#include <vector>

#include "eqc/errors.hpp"

namespace eqc {

enum class GateKind { h, cnot, x, z, ry };

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::h: return "H";
        case GateKind::cnot: return "CNOT";
        case GateKind::x: return "X";
        case GateKind::z: return "Z";
        case GateKind::ry: return "RY";
    }
    return "?";
}

inline GateKind gate_kind_from_name(const std::string& name) {
    for (auto k : {GateKind::h, GateKind::cnot, GateKind::x, GateKind::z, GateKind::ry}) {
        if (name == gate_name(k)) return k;
    }
    throw ParseError("unknown gate kind " + name);
}

struct Gate {
    GateKind kind = GateKind::h;
    /// Target for single-qubit gates; (control, target) for CNOT.
    std::uint32_t q0 = 0;
    std::uint32_t q1 = 0;
    /// Rotation angle in radians (RY only).
    double theta = 0.0;
    /// Index into Circuit::tags().
    std::uint32_t tag = 0;

    static Gate h(std::size_t q) { return {GateKind::h, narrow(q), 0, 0.0, 0}; }
    static Gate x(std::size_t q) { return {GateKind::x, narrow(q), 0, 0.0, 0}; }
    static Gate z(std::size_t q) { return {GateKind::z, narrow(q), 0, 0.0, 0}; }
    static Gate ry(std::size_t q, double theta) { return {GateKind::ry, narrow(q), 0, theta, 0}; }
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::cnot, narrow(control), narrow(target), 0.0, 0};
    }

    bool two_qubit() const { return kind == GateKind::cnot; }
    std::size_t arity() const { return two_qubit() ? 2 : 1; }

    friend bool operator==(const Gate&, const Gate&) = default;

   private:
    static std::uint32_t narrow(std::size_t q) { return static_cast<std::uint32_t>(q); }
};

using Layer = std::vector<Gate>;

class Circuit {
   public:
    explicit Circuit(std::size_t n_qubits = 0) : n_(n_qubits), tags_{""} {}

    /// Validates indices and per-layer disjointness.
    Circuit(std::size_t n_qubits, std::vector<Layer> layers, std::vector<std::string> tags = {""})
        : n_(n_qubits), layers_(std::move(layers)), tags_(std::move(tags)) {
        if (tags_.empty()) tags_.push_back("");
        validate();
    }

    std::size_t n_qubits() const { return n_; }
    const std::vector<Layer>& layers() const { return layers_; }
    const std::vector<std::string>& tags() const { return tags_; }
    std::size_t depth() const { return layers_.size(); }

    std::size_t size() const {
        std::size_t total = 0;
        for (const auto& l : layers_) total += l.size();
        return total;
    }

    /// Gates in execution order (layer by layer).
    std::vector<Gate> gates() const {
        std::vector<Gate> out;
        for (const auto& l : layers_) out.insert(out.end(), l.begin(), l.end());
        return out;
    }

    /// Number of layers from the first to the last layer holding a gate with
    /// any of the given tags; 0 when no such gate exists.
    std::size_t tag_span(std::initializer_list<std::string_view> names) const {
        std::set<std::uint32_t> ids;
        for (auto name : names) {
            for (std::uint32_t i = 0; i < tags_.size(); ++i) {
                if (tags_[i] == name) ids.insert(i);
            }
        }
        std::optional<std::size_t> first, last;
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            for (const auto& g : layers_[l]) {
                if (ids.contains(g.tag)) {
                    if (!first) first = l;
                    last = l;
                }
            }
        }
        return first ? *last - *first + 1 : 0;
    }

    void validate() const {
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            std::set<std::uint32_t> used;
            for (const auto& g : layers_[l]) {
                if (g.q0 >= n_ || (g.two_qubit() && g.q1 >= n_)) {
                    throw DimensionError("gate qubit out of range in layer " + std::to_string(l));
                }
                if (g.two_qubit() && g.q0 == g.q1) throw DimensionError("CNOT control equals target");
                if (g.tag >= tags_.size()) throw DimensionError("gate tag out of range");
                if (!used.insert(g.q0).second || (g.two_qubit() && !used.insert(g.q1).second)) {
                    throw DimensionError("gates overlap in layer " + std::to_string(l));
                }
            }
        }
    }

   private:
    std::size_t n_;
    std::vector<Layer> layers_;
    std::vector<std::string> tags_;
};

enum class StageMode { ordered, commuting };

class CircuitBuilder {
   public:
    explicit CircuitBuilder(std::size_t n_qubits) : n_(n_qubits), qubit_free_(n_qubits, 0), tags_{""} {}

    /// Starts a new stage: later gates land at or after the current depth.
    void barrier(StageMode mode = StageMode::ordered) {
        floor_ = layers_.size();
        mode_ = mode;
    }

    /// Tag attached to subsequently added gates.
    void tag(const std::string& name) {
        auto it = std::find(tags_.begin(), tags_.end(), name);
        if (it == tags_.end()) {
            tags_.push_back(name);
            current_tag_ = static_cast<std::uint32_t>(tags_.size() - 1);
        } else {
            current_tag_ = static_cast<std::uint32_t>(it - tags_.begin());
        }
    }

    /// A fresh serial chain.
    std::size_t chain() {
        chain_free_.push_back(0);
        return chain_free_.size() - 1;
    }

    void add(Gate g, std::optional<std::size_t> chain = std::nullopt) {
        if (g.q0 >= n_ || (g.two_qubit() && (g.q1 >= n_ || g.q1 == g.q0))) {
            throw DimensionError("bad gate qubits");
        }
        g.tag = current_tag_;
        std::size_t layer = floor_;
        if (chain) layer = std::max(layer, chain_free_.at(*chain));
        if (mode_ == StageMode::ordered) {
            layer = std::max(layer, qubit_free_[g.q0]);
            if (g.two_qubit()) layer = std::max(layer, qubit_free_[g.q1]);
        } else {
            while (layer < layers_.size() && (busy(layer, g.q0) || (g.two_qubit() && busy(layer, g.q1)))) ++layer;
        }
        while (layers_.size() <= layer) layers_.emplace_back();
        layers_[layer].push_back(g);
        qubit_free_[g.q0] = std::max(qubit_free_[g.q0], layer + 1);
        if (g.two_qubit()) qubit_free_[g.q1] = std::max(qubit_free_[g.q1], layer + 1);
        if (chain) chain_free_[*chain] = layer + 1;
    }

    Circuit build() && { return Circuit(n_, std::move(layers_), std::move(tags_)); }

   private:
    bool busy(std::size_t layer, std::uint32_t q) const {
        for (const auto& g : layers_[layer]) {
            if (g.q0 == q || (g.two_qubit() && g.q1 == q)) return true;
        }
        return false;
    }

    std::size_t n_;
    std::vector<Layer> layers_;
    std::vector<std::size_t> qubit_free_;
    std::vector<std::size_t> chain_free_;
    std::vector<std::string> tags_;
    std::uint32_t current_tag_ = 0;
    std::size_t floor_ = 0;
    StageMode mode_ = StageMode::ordered;
};

using GateCounts = std::map<GateKind, std::size_t>;

inline GateCounts gate_counts(const Circuit& c) {
    GateCounts out;
    for (const auto& l : c.layers()) {
        for (const auto& g : l) ++out[g.kind];
    }
    return out;
}

/// Counts restricted to gates carrying one of the given tags.
inline GateCounts gate_counts(const Circuit& c, std::initializer_list<std::string_view> names) {
    std::set<std::uint32_t> ids;
    for (auto name : names) {
        for (std::uint32_t i = 0; i < c.tags().size(); ++i) {
            if (c.tags()[i] == name) ids.insert(i);
        }
    }
    GateCounts out;
    for (const auto& l : c.layers()) {
        for (const auto& g : l) {
            if (ids.contains(g.tag)) ++out[g.kind];
        }
    }
    return out;
}

inline std::size_t count_of(const GateCounts& counts, GateKind k) {
    auto it = counts.find(k);
    return it == counts.end() ? 0 : it->second;
}

inline std::size_t depth(const Circuit& c) { return c.depth(); }

/// OpenQASM 2 text. The header comment block lists the label of every qubit.
inline std::string to_qasm(const Circuit& c, const std::vector<std::string>& qubit_labels = {}) {
    std::ostringstream out;
    out.precision(17);
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    if (!qubit_labels.empty()) {
        out << "// qubit labeling:\n";
        for (std::size_t q = 0; q < qubit_labels.size(); ++q) out << "//   q[" << q << "] = " << qubit_labels[q] << "\n";
    }
    out << "qreg q[" << c.n_qubits() << "];\n";
    for (std::size_t l = 0; l < c.layers().size(); ++l) {
        out << "// layer " << (l + 1) << "\n";
        for (const auto& g : c.layers()[l]) {
            switch (g.kind) {
                case GateKind::h: out << "h q[" << g.q0 << "];\n"; break;
                case GateKind::x: out << "x q[" << g.q0 << "];\n"; break;
                case GateKind::z: out << "z q[" << g.q0 << "];\n"; break;
                case GateKind::ry: out << "ry(" << g.theta << ") q[" << g.q0 << "];\n"; break;
                case GateKind::cnot: out << "cx q[" << g.q0 << "],q[" << g.q1 << "];\n"; break;
            }
        }
    }
    return out.str();
}

}  // namespace eqc

#pragma once

// Eigenstate preparation circuits.
//
// Every builder returns the circuit together with the product input state it
// must act on (one +-1 per qubit, +1 = |0>). Running the circuit on that input
// yields the joint eigenstate whose term expectations equal the supplied
// quantum numbers.
//
// Each controlled Pauli of the form (P)^{Q_c} becomes CNOTs from c. Products
// of non-commuting factors are applied right to left, i.e. the factor written
// last acts first.

#include <string>
#include <vector>

#include "eqc/circuit.hpp"
#include "eqc/errors.hpp"
#include "eqc/lattice.hpp"
#include "eqc/quantum_numbers.hpp"

namespace eqc {

struct StatePreparation {
    Circuit circuit;
    /// Input product state, one +-1 per qubit.
    std::vector<int> input;
};

/// The circuit with an extra leading layer of X gates that turns |0...0> into
/// the prescribed input; useful for export to tools that always start at zero.
inline Circuit with_input_layer(const StatePreparation& p) {
    std::vector<Layer> layers;
    Layer first;
    for (std::size_t q = 0; q < p.input.size(); ++q) {
        if (p.input[q] == -1) first.push_back(Gate::x(q));
    }
    std::vector<std::string> tags = p.circuit.tags();
    tags.push_back("input");
    for (auto& g : first) g.tag = static_cast<std::uint32_t>(tags.size() - 1);
    if (!first.empty()) layers.push_back(std::move(first));
    layers.insert(layers.end(), p.circuit.layers().begin(), p.circuit.layers().end());
    return Circuit(p.circuit.n_qubits(), std::move(layers), std::move(tags));
}

namespace detail {

template <class G>
const G& expect_geometry(const ModelSpec& m, const char* what) {
    if (auto* g = std::get_if<G>(&m.geometry())) return *g;
    throw MismatchError(std::string("model is not a ") + what);
}

inline std::vector<std::size_t> odd_then_even(int n1) {
    std::vector<std::size_t> out;
    for (int a = 1; a <= n1; a += 2) out.push_back(static_cast<std::size_t>(a));
    for (int a = 2; a <= n1; a += 2) out.push_back(static_cast<std::size_t>(a));
    return out;
}

inline std::vector<std::size_t> even_then_odd(int n1) {
    std::vector<std::size_t> out;
    for (int a = 2; a <= n1; a += 2) out.push_back(static_cast<std::size_t>(a));
    for (int a = 1; a <= n1; a += 2) out.push_back(static_cast<std::size_t>(a));
    return out;
}

}  // namespace detail

/// Hadamards on odd qubits, then CNOTs (2n-1 -> 2n), then (2n+1 -> 2n).
/// Input: qubit 2n holds z_n, qubit 2n+1 holds x_n.
inline StatePreparation build_trestle_circuit(const ModelSpec& m, const QuantumNumbers& q) {
    const int n = detail::expect_geometry<Trestle>(m, "trestle").n;
    validate(m, q);
    const std::size_t nq = m.n_qubits();
    auto idx = [nq](int label) { return static_cast<std::size_t>(label - 1) % nq; };
    std::vector<int> input(nq, 1);
    for (int k = 1; k <= n; ++k) {
        input[idx(2 * k)] = q.at(m, "Z" + std::to_string(k));
        input[idx(2 * k + 1)] = q.at(m, "X" + std::to_string(k));
    }
    CircuitBuilder b(nq);
    b.tag("hadamard");
    for (int k = 1; k <= n; ++k) b.add(Gate::h(idx(2 * k - 1)));
    b.barrier();
    b.tag("cnot_a");
    for (int k = 1; k <= n; ++k) b.add(Gate::cnot(idx(2 * k - 1), idx(2 * k)));
    b.barrier();
    b.tag("cnot_b");
    for (int k = 1; k <= n; ++k) b.add(Gate::cnot(idx(2 * k + 1), idx(2 * k)));
    return {std::move(b).build(), std::move(input)};
}

/// Hadamards on bond qubits, then CNOTs from each bond to both of its sites,
/// packed greedily (all CNOTs of the stage commute).
inline StatePreparation build_graph_circuit(const ModelSpec& m, const QuantumNumbers& q) {
    const auto& g = detail::expect_geometry<Graph>(m, "graph");
    validate(m, q);
    const std::size_t ns = static_cast<std::size_t>(g.nodes);
    std::vector<int> input(m.n_qubits(), 1);
    for (std::size_t s = 0; s < ns; ++s) input[s] = q.at(m, "Z" + std::to_string(s + 1));
    for (std::size_t j = 0; j < g.bonds.size(); ++j) {
        input[ns + j] = q.at(m, "X(" + std::to_string(g.bonds[j].first + 1) + "," +
                                    std::to_string(g.bonds[j].second + 1) + ")");
    }
    CircuitBuilder b(m.n_qubits());
    b.tag("hadamard");
    for (std::size_t j = 0; j < g.bonds.size(); ++j) b.add(Gate::h(ns + j));
    b.barrier(StageMode::commuting);
    b.tag("cnot");
    for (std::size_t j = 0; j < g.bonds.size(); ++j) {
        b.add(Gate::cnot(ns + j, static_cast<std::size_t>(g.bonds[j].first)));
        b.add(Gate::cnot(ns + j, static_cast<std::size_t>(g.bonds[j].second)));
    }
    return {std::move(b).build(), std::move(input)};
}

namespace detail {

inline StatePreparation build_open_square_circuit(const ModelSpec& m, const QuantumNumbers& q) {
    validate(m, q);
    const SquareLattice lat = m.lattice();
    const int n1 = lat.n1(), n2 = lat.n2();
    std::vector<int> input(m.n_qubits(), 1);
    for (int a = 1; a <= n1; ++a) {
        for (int k = 1; k <= n2; ++k) {
            input[lat.v(a, k)] = q.at(m, SquareLattice::x_label(a, k));
            input[lat.h(a, k)] = q.at(m, SquareLattice::z_label(a, k));
        }
    }
    CircuitBuilder b(m.n_qubits());
    b.tag("hadamard");
    for (int a = 1; a <= n1; ++a) {
        for (int k = 1; k <= n2; ++k) b.add(Gate::h(lat.v(a, k)));
    }
    // U32: Ising chains along n2, k = 2 .. N2 in time order.
    b.barrier();
    b.tag("U32");
    for (int a = 1; a <= n1; ++a) {
        const auto c = b.chain();
        for (int k = 2; k <= n2; ++k) b.add(Gate::cnot(lat.h(a, k - 1), lat.h(a, k)), c);
    }
    // U31: one string per column, k = N2 down to 1 in time order.
    b.barrier();
    b.tag("U31");
    const auto columns = odd_then_even(n1);
    std::vector<std::size_t> chains(static_cast<std::size_t>(n1) + 1);
    for (auto a : columns) chains[a] = b.chain();
    for (int k = n2; k >= 1; --k) {
        for (int slot = 0; slot < 3; ++slot) {
            for (auto col : columns) {
                const int a = static_cast<int>(col);
                const auto target = slot == 0   ? lat.horizontal(a - 1, k)
                                    : slot == 1 ? lat.horizontal(a, k)
                                                : lat.vertical(a, k + 1);
                if (target) b.add(Gate::cnot(lat.v(a, k), *target), chains[col]);
            }
        }
    }
    return {std::move(b).build(), std::move(input)};
}

}  // namespace detail

/// Input: vertical qubit (n1, n2 - 1/2) holds x(n1, n2); horizontal qubit
/// (n1 + 1/2, n2) holds z(n1 + 1/2, n2 - 1/2). Stages: Hadamards on vertical
/// qubits, U32 chains, U31 strings.
inline StatePreparation build_cylinder_circuit(const ModelSpec& m, const QuantumNumbers& q) {
    detail::expect_geometry<Cylinder>(m, "cylinder");
    return detail::build_open_square_circuit(m, q);
}

/// Same recipe as the cylinder; strings end at the open n1 boundaries.
inline StatePreparation build_sheet_circuit(const ModelSpec& m, const QuantumNumbers& q) {
    detail::expect_geometry<Sheet>(m, "sheet");
    return detail::build_open_square_circuit(m, q);
}

/// Toric-code eigenstate with reference lines n1' = n1'' = n2' = n2'' = 1.
///
/// The qubits at (1/2, 1) and (1, 1/2) carry chi and zeta and receive
/// RY(theta_u), RY(theta_v) instead of Hadamards. Stages: Hadamards and
/// rotations; U44 and U43 in parallel, each a single serial chain; U42 chains;
/// U41 strings.
inline StatePreparation build_torus_circuit(const ModelSpec& m, const QuantumNumbers& q) {
    detail::expect_geometry<Torus>(m, "torus");
    validate(m, q);
    const SquareLattice lat = m.lattice();
    const int n1 = lat.n1(), n2 = lat.n2();
    const TorusExtras& extra = *q.torus;

    std::vector<int> input(m.n_qubits(), 1);
    for (int a = 1; a <= n1; ++a) {
        input[lat.h(a - 1, 1)] = a == 1 ? extra.chi : q.at(m, SquareLattice::x_label(a, 1));
        input[lat.v(a, 1)] = a == 1 ? extra.zeta : q.at(m, SquareLattice::z_label(a, 1));
        for (int k = 2; k <= n2; ++k) {
            input[lat.h(a, k)] = q.at(m, SquareLattice::z_label(a, k));
            input[lat.v(a, k)] = q.at(m, SquareLattice::x_label(a, k));
        }
    }

    CircuitBuilder b(m.n_qubits());
    b.tag("hadamard");
    for (int a = 2; a <= n1; ++a) b.add(Gate::h(lat.h(a - 1, 1)));
    for (int a = 1; a <= n1; ++a) {
        for (int k = 2; k <= n2; ++k) b.add(Gate::h(lat.v(a, k)));
    }
    b.tag("rotation");
    b.add(Gate::ry(lat.h(0, 1), extra.theta_u));
    b.add(Gate::ry(lat.v(1, 1), extra.theta_v));

    b.barrier();
    b.tag("U44");
    const auto c44 = b.chain();
    for (int a = n1; a >= 2; --a) {
        const std::size_t target = lat.v(a, 1);
        b.add(Gate::cnot(lat.v(a + 1, 1), target), c44);
        for (int k = 2; k <= n2; ++k) b.add(Gate::cnot(lat.h(a, k), target), c44);
    }
    b.tag("U43");
    const auto c43 = b.chain();
    for (int a = n1; a >= 2; --a) {
        const std::size_t control = lat.h(a - 1, 1);
        b.add(Gate::cnot(control, lat.h(a, 1)), c43);
        for (int k = 2; k <= n2; ++k) b.add(Gate::cnot(control, lat.v(a, k)), c43);
    }

    b.barrier();
    b.tag("U42");
    for (int a = 1; a <= n1; ++a) {
        const auto c = b.chain();
        for (int k = 2; k <= n2; ++k) b.add(Gate::cnot(lat.h(a, k - 1), lat.h(a, k)), c);
    }

    b.barrier();
    b.tag("U41");
    const auto columns = detail::even_then_odd(n1);
    std::vector<std::size_t> chains(static_cast<std::size_t>(n1) + 1);
    for (auto a : columns) chains[a] = b.chain();
    for (int k = n2; k >= 2; --k) {
        for (int slot = 0; slot < 3; ++slot) {
            for (auto col : columns) {
                const int a = static_cast<int>(col);
                const std::size_t target = slot == 0 ? lat.h(a - 1, k) : slot == 1 ? lat.h(a, k) : lat.v(a, k + 1);
                b.add(Gate::cnot(lat.v(a, k), target), chains[col]);
            }
        }
    }
    return {std::move(b).build(), std::move(input)};
}

/// Dispatches on the model geometry.
inline StatePreparation prepare_eigenstate(const ModelSpec& m, const QuantumNumbers& q) {
    switch (m.geometry().index()) {
        case 0: return build_trestle_circuit(m, q);
        case 1: return build_graph_circuit(m, q);
        case 2: return build_cylinder_circuit(m, q);
        case 3: return build_sheet_circuit(m, q);
        default: return build_torus_circuit(m, q);
    }
}

}  // namespace eqc

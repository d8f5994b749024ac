#pragma once

// Model construction for the trestle, graph, cylinder, sheet and torus
// families.
//
// Qubit labeling
// --------------
// Trestle: qubit l (1-based) is index l-1.
// Graph:   site n (0-based) is index n; bond j in canonical (sorted) order is
//          index n_sites + j.
// Square lattices (cylinder, sheet, torus): coordinates are doubled so that
// half-integers become integers. The qubit at (n1, n2 - 1/2) ("vertical",
// carries the x-type quantum number) is doubled to (2 n1, 2 n2 - 1); the qubit
// at (n1 + 1/2, n2) ("horizontal", carries the z-type quantum number) is
// doubled to (2 n1 + 1, 2 n2). Rows of constant doubled second coordinate Y
// hold N1 qubits each and are stored row-major:
//     index = (Y - 1) * N1 + (n1 - 1),  n1 in 1..N1.
// Horizontal qubits at n1 + 1/2 = 1/2 wrap to N1 + 1/2 on periodic lattices.
//
// Term ordering: all X-type terms in lexicographic coordinate order, then all
// Z-type terms in lexicographic coordinate order.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eqc/errors.hpp"
#include "eqc/pauli.hpp"

namespace eqc {

struct Trestle {
    int n = 0;
};

struct Graph {
    int nodes = 0;
    /// Canonical bonds: (lo, hi) with lo < hi, sorted.
    std::vector<std::pair<int, int>> bonds;
};

struct Cylinder {
    int n1 = 0, n2 = 0;
};

struct Sheet {
    int n1 = 0, n2 = 0;
};

struct Torus {
    int n1 = 0, n2 = 0;
};

using Geometry = std::variant<Trestle, Graph, Cylinder, Sheet, Torus>;

inline std::string geometry_name(const Geometry& g) {
    static constexpr const char* names[] = {"trestle", "graph", "cylinder", "sheet", "torus"};
    return names[g.index()];
}

enum class TermKind { x, z };

/// Doubled lattice coordinate; (a2, b2) stands for (a2/2, b2/2).
struct Coord2 {
    int a2 = 0, b2 = 0;
    friend auto operator<=>(const Coord2&, const Coord2&) = default;
};

inline std::string format_half(int doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

inline std::string format_coord(Coord2 c) { return "(" + format_half(c.a2) + "," + format_half(c.b2) + ")"; }

struct Term {
    std::string label;
    TermKind kind = TermKind::x;
    PauliString op;
    double coupling = 0.0;
};

/// Product of the listed terms equals the identity.
struct Constraint {
    std::vector<std::string> labels;
};

struct Uniform {
    double iz = -1.0;
    double ix = -1.0;
};

struct PerTerm {
    std::map<std::string, double> values;
};

using CouplingSpec = std::variant<Uniform, PerTerm>;

/// Index arithmetic for the square-lattice families.
class SquareLattice {
   public:
    SquareLattice(int n1, int n2, bool periodic1, bool periodic2)
        : n1_(n1), n2_(n2), periodic1_(periodic1), periodic2_(periodic2) {}

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    std::size_t n_qubits() const { return static_cast<std::size_t>(2 * n1_ * n2_); }

    /// Qubit at (a, k - 1/2).
    std::optional<std::size_t> vertical(int a, int k) const {
        if (!wrap(a, k)) return std::nullopt;
        return static_cast<std::size_t>((2 * k - 2) * n1_ + (a - 1));
    }

    /// Qubit at (a + 1/2, k).
    std::optional<std::size_t> horizontal(int a, int k) const {
        if (!wrap(a, k)) return std::nullopt;
        return static_cast<std::size_t>((2 * k - 1) * n1_ + (a - 1));
    }

    std::size_t v(int a, int k) const { return must(vertical(a, k)); }
    std::size_t h(int a, int k) const { return must(horizontal(a, k)); }

    /// Support of the X-type term at site (a, k).
    std::vector<std::size_t> x_support(int a, int k) const {
        return collect({horizontal(a - 1, k), vertical(a, k + 1), horizontal(a, k), vertical(a, k)});
    }

    /// Support of the Z-type term at plaquette (a + 1/2, k - 1/2).
    std::vector<std::size_t> z_support(int a, int k) const {
        return collect({vertical(a, k), horizontal(a, k), vertical(a + 1, k), horizontal(a, k - 1)});
    }

    static std::string x_label(int a, int k) { return "X" + format_coord({2 * a, 2 * k}); }
    static std::string z_label(int a, int k) { return "Z" + format_coord({2 * a + 1, 2 * k - 1}); }

    std::vector<std::string> qubit_labels() const {
        std::vector<std::string> out(n_qubits());
        for (int a = 1; a <= n1_; ++a) {
            for (int k = 1; k <= n2_; ++k) {
                out[v(a, k)] = format_coord({2 * a, 2 * k - 1});
                out[h(a, k)] = format_coord({2 * a + 1, 2 * k});
            }
        }
        return out;
    }

   private:
    bool wrap(int& a, int& k) const {
        if (periodic1_) {
            a = ((a - 1) % n1_ + n1_) % n1_ + 1;
        } else if (a < 1 || a > n1_) {
            return false;
        }
        if (periodic2_) {
            k = ((k - 1) % n2_ + n2_) % n2_ + 1;
        } else if (k < 1 || k > n2_) {
            return false;
        }
        return true;
    }

    static std::size_t must(std::optional<std::size_t> q) {
        if (!q) throw GeometryError("lattice coordinate outside the model");
        return *q;
    }

    static std::vector<std::size_t> collect(std::initializer_list<std::optional<std::size_t>> qs) {
        std::vector<std::size_t> out;
        for (auto q : qs) {
            if (q) out.push_back(*q);
        }
        return out;
    }

    int n1_, n2_;
    bool periodic1_, periodic2_;
};

class ModelSpec {
   public:
    ModelSpec(Geometry geometry, std::size_t n_qubits, std::vector<Term> terms,
              std::vector<Constraint> constraints, std::vector<std::string> qubit_labels)
        : geometry_(std::move(geometry)),
          n_qubits_(n_qubits),
          terms_(std::move(terms)),
          constraints_(std::move(constraints)),
          qubit_labels_(std::move(qubit_labels)) {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].op.n_qubits() != n_qubits_) throw DimensionError("term size mismatch");
            if (!index_.emplace(terms_[i].label, i).second) {
                throw GeometryError("duplicate term label " + terms_[i].label);
            }
        }
        if (qubit_labels_.size() != n_qubits_) throw DimensionError("qubit label count mismatch");
        for (const auto& c : constraints_) {
            for (const auto& l : c.labels) term_index(l);
        }
    }

    const Geometry& geometry() const { return geometry_; }
    std::size_t n_qubits() const { return n_qubits_; }
    const std::vector<Term>& terms() const { return terms_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<std::string>& qubit_labels() const { return qubit_labels_; }

    std::size_t term_index(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw MismatchError("no term labelled " + label);
        return it->second;
    }

    bool has_term(const std::string& label) const { return index_.contains(label); }
    const Term& term(const std::string& label) const { return terms_[term_index(label)]; }

    bool is_torus() const { return std::holds_alternative<Torus>(geometry_); }

    /// Square-lattice index helper; throws for trestle and graph models.
    SquareLattice lattice() const {
        if (auto* c = std::get_if<Cylinder>(&geometry_)) return {c->n1, c->n2, true, false};
        if (auto* s = std::get_if<Sheet>(&geometry_)) return {s->n1, s->n2, false, false};
        if (auto* t = std::get_if<Torus>(&geometry_)) return {t->n1, t->n2, true, true};
        throw GeometryError("model is not a square lattice");
    }

    /// Copy with one term's coupling replaced.
    ModelSpec with_coupling(const std::string& label, double value) const {
        ModelSpec out = *this;
        out.terms_[term_index(label)].coupling = value;
        return out;
    }

    /// Product of the terms named by constraint i; the identity for a valid model.
    PauliString constraint_product(std::size_t i) const {
        PauliString acc(n_qubits_);
        for (const auto& l : constraints_.at(i).labels) acc *= term(l).op;
        return acc;
    }

   private:
    Geometry geometry_;
    std::size_t n_qubits_;
    std::vector<Term> terms_;
    std::vector<Constraint> constraints_;
    std::vector<std::string> qubit_labels_;
    std::map<std::string, std::size_t> index_;
};

/// Reference plaquettes for torus circuits (reference lines fixed at 1).
inline const std::string& torus_x_reference() {
    static const std::string label = SquareLattice::x_label(1, 1);
    return label;
}

inline const std::string& torus_z_reference() {
    static const std::string label = SquareLattice::z_label(1, 1);
    return label;
}

namespace detail {

inline void apply_couplings(std::vector<Term>& terms, const CouplingSpec& couplings) {
    if (auto* u = std::get_if<Uniform>(&couplings)) {
        for (auto& t : terms) t.coupling = t.kind == TermKind::x ? u->ix : u->iz;
        return;
    }
    const auto& values = std::get<PerTerm>(couplings).values;
    std::set<std::string> seen;
    for (auto& t : terms) {
        auto it = values.find(t.label);
        if (it == values.end()) throw MismatchError("no coupling given for term " + t.label);
        t.coupling = it->second;
        seen.insert(t.label);
    }
    for (const auto& [label, value] : values) {
        if (!seen.contains(label)) throw MismatchError("coupling given for unknown term " + label);
    }
}

inline ModelSpec build_square(Geometry geometry, const SquareLattice& lat, const CouplingSpec& couplings,
                              bool with_constraints) {
    const std::size_t n = lat.n_qubits();
    std::vector<Term> terms;
    for (int a = 1; a <= lat.n1(); ++a) {
        for (int k = 1; k <= lat.n2(); ++k) {
            auto s = lat.x_support(a, k);
            terms.push_back({SquareLattice::x_label(a, k), TermKind::x, PauliString::uniform(n, s, 'X'), 0.0});
        }
    }
    for (int a = 1; a <= lat.n1(); ++a) {
        for (int k = 1; k <= lat.n2(); ++k) {
            auto s = lat.z_support(a, k);
            terms.push_back({SquareLattice::z_label(a, k), TermKind::z, PauliString::uniform(n, s, 'Z'), 0.0});
        }
    }
    apply_couplings(terms, couplings);
    std::vector<Constraint> constraints;
    if (with_constraints) {
        Constraint cx, cz;
        for (const auto& t : terms) (t.kind == TermKind::x ? cx : cz).labels.push_back(t.label);
        constraints = {cx, cz};
    }
    return ModelSpec(std::move(geometry), n, std::move(terms), std::move(constraints), lat.qubit_labels());
}

inline void require_lattice(int n1, int n2) {
    if (n1 < 2 || n2 < 2) {
        throw GeometryError("lattice needs N1 >= 2 and N2 >= 2, got " + std::to_string(n1) + "x" +
                            std::to_string(n2));
    }
}

}  // namespace detail

/// Closed trestle of 2N qubits with Z_n = Z_{2n-1} Z_{2n} Z_{2n+1} and
/// X_n = X_{2n} X_{2n+1} X_{2n+2}, labels 1-based and periodic mod 2N.
inline ModelSpec build_trestle(int n, const CouplingSpec& couplings = Uniform{}) {
    if (n < 2) throw GeometryError("trestle needs N >= 2, got " + std::to_string(n));
    const std::size_t nq = static_cast<std::size_t>(2 * n);
    auto idx = [nq](int label) { return static_cast<std::size_t>((label - 1) % static_cast<int>(nq)); };
    std::vector<Term> terms;
    for (int k = 1; k <= n; ++k) {
        terms.push_back({"X" + std::to_string(k), TermKind::x,
                         PauliString::uniform(nq, {idx(2 * k), idx(2 * k + 1), idx(2 * k + 2)}, 'X'), 0.0});
    }
    for (int k = 1; k <= n; ++k) {
        terms.push_back({"Z" + std::to_string(k), TermKind::z,
                         PauliString::uniform(nq, {idx(2 * k - 1), idx(2 * k), idx(2 * k + 1)}, 'Z'), 0.0});
    }
    detail::apply_couplings(terms, couplings);
    std::vector<std::string> labels;
    for (std::size_t l = 1; l <= nq; ++l) labels.push_back(std::to_string(l));
    return ModelSpec(Trestle{n}, nq, std::move(terms), {}, std::move(labels));
}

/// Sites and bond qubits on an arbitrary graph. Nodes are 0-based; labels
/// render them 1-based.
inline ModelSpec build_graph(int nodes, std::vector<std::pair<int, int>> bonds,
                             const CouplingSpec& couplings = Uniform{}) {
    if (nodes < 1) throw GeometryError("graph needs at least one node");
    std::set<std::pair<int, int>> canonical;
    for (auto [a, b] : bonds) {
        if (a == b) throw GeometryError("self-loop bond at node " + std::to_string(a + 1));
        if (a < 0 || b < 0 || a >= nodes || b >= nodes) throw GeometryError("bond names a missing node");
        if (!canonical.emplace(std::min(a, b), std::max(a, b)).second) {
            throw GeometryError("duplicate bond (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
        }
    }
    Graph g{nodes, {canonical.begin(), canonical.end()}};
    std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(nodes));
    for (std::size_t j = 0; j < g.bonds.size(); ++j) {
        incident[static_cast<std::size_t>(g.bonds[j].first)].push_back(j);
        incident[static_cast<std::size_t>(g.bonds[j].second)].push_back(j);
    }
    for (int s = 0; s < nodes; ++s) {
        if (incident[static_cast<std::size_t>(s)].empty()) {
            throw GeometryError("isolated node " + std::to_string(s + 1));
        }
    }
    const std::size_t ns = static_cast<std::size_t>(nodes);
    const std::size_t nq = ns + g.bonds.size();
    auto bond_label = [&](std::size_t j) {
        return "(" + std::to_string(g.bonds[j].first + 1) + "," + std::to_string(g.bonds[j].second + 1) + ")";
    };
    std::vector<Term> terms;
    for (std::size_t j = 0; j < g.bonds.size(); ++j) {
        auto [a, b] = g.bonds[j];
        terms.push_back({"X" + bond_label(j), TermKind::x,
                         PauliString::uniform(nq, {static_cast<std::size_t>(a), ns + j, static_cast<std::size_t>(b)}, 'X'),
                         0.0});
    }
    for (std::size_t s = 0; s < ns; ++s) {
        std::vector<std::size_t> supp{s};
        for (auto j : incident[s]) supp.push_back(ns + j);
        terms.push_back({"Z" + std::to_string(s + 1), TermKind::z, PauliString::uniform(nq, supp, 'Z'), 0.0});
    }
    detail::apply_couplings(terms, couplings);
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < ns; ++s) labels.push_back("site " + std::to_string(s + 1));
    for (std::size_t j = 0; j < g.bonds.size(); ++j) labels.push_back("bond " + bond_label(j));
    return ModelSpec(std::move(g), nq, std::move(terms), {}, std::move(labels));
}

/// Periodic along n1, open along n2, with three-qubit terms on both open edges.
inline ModelSpec build_cylinder(int n1, int n2, const CouplingSpec& couplings = Uniform{}) {
    detail::require_lattice(n1, n2);
    return detail::build_square(Cylinder{n1, n2}, SquareLattice(n1, n2, true, false), couplings, false);
}

/// Open along both axes. Edges carry three-qubit terms; X(1,N2) and
/// Z(N1+1/2,1/2) are the two two-qubit corner terms.
inline ModelSpec build_sheet(int n1, int n2, const CouplingSpec& couplings = Uniform{}) {
    detail::require_lattice(n1, n2);
    return detail::build_square(Sheet{n1, n2}, SquareLattice(n1, n2, false, false), couplings, false);
}

/// Periodic toric code with the two global constraints prod X = prod Z = 1.
inline ModelSpec build_torus(int n1, int n2, const CouplingSpec& couplings = Uniform{}) {
    detail::require_lattice(n1, n2);
    return detail::build_square(Torus{n1, n2}, SquareLattice(n1, n2, true, true), couplings, true);
}

/// Torus with the couplings of the X term at x_site = (n1, n2) and the Z term
/// at z_site = (n1 + 1/2, n2 - 1/2) set to zero; both coordinates are given
/// as doubled Coord2 values.
inline ModelSpec punctured_torus(const ModelSpec& spec, Coord2 x_site, Coord2 z_site) {
    if (!spec.is_torus()) throw GeometryError("puncturing needs a torus model");
    const std::string xl = "X" + format_coord(x_site);
    const std::string zl = "Z" + format_coord(z_site);
    if (!spec.has_term(xl)) throw GeometryError("no X term at " + format_coord(x_site));
    if (!spec.has_term(zl)) throw GeometryError("no Z term at " + format_coord(z_site));
    return spec.with_coupling(xl, 0.0).with_coupling(zl, 0.0);
}

/// Punctures at the reference plaquettes used by the torus circuit.
inline ModelSpec punctured_torus(const ModelSpec& spec) { return punctured_torus(spec, {2, 2}, {3, 1}); }

}  // namespace eqc

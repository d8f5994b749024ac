#pragma once

// Independent oracles and claim checks.
//
// Failed claims are recorded in a VerificationReport rather than thrown;
// exceptions are reserved for malformed inputs.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqc/dense.hpp"
#include "eqc/errors.hpp"
#include "eqc/lattice.hpp"
#include "eqc/pauli.hpp"
#include "eqc/quantum_numbers.hpp"
#include "eqc/synthesis.hpp"
#include "eqc/tableau.hpp"

namespace eqc {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tol = 0.0;
};

struct VerificationReport {
    std::vector<Check> checks;

    /// Records |measured - expected| <= tol.
    void add(std::string name, double measured, double expected, double tol) {
        const bool ok = std::abs(measured - expected) <= tol;
        checks.push_back({std::move(name), ok, measured, expected, tol});
    }

    /// Records measured <= bound (expected holds the bound, tol is 0).
    void add_at_most(std::string name, double measured, double bound) {
        checks.push_back({std::move(name), measured <= bound, measured, bound, 0.0});
    }

    void merge(const VerificationReport& other, const std::string& prefix = "") {
        for (auto c : other.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }

    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
    }

    const Check* find(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }

    /// Stable order by check name.
    void sort() {
        std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    }
};

enum class Engine { dense, tableau };

inline const char* engine_name(Engine e) { return e == Engine::dense ? "dense" : "tableau"; }

/// Decides membership of a Pauli operator in the group generated by a set of
/// mutually commuting signed generators, by GF(2) elimination.
class StabilizerGroup {
   public:
    explicit StabilizerGroup(std::vector<PauliString> generators) : gens_(std::move(generators)) {
        if (gens_.empty()) return;
        n_ = gens_.front().n_qubits();
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            Row r{vec(gens_[i]), std::vector<bool>(gens_.size(), false), 0};
            r.combo[i] = true;
            reduce(r);
            auto pivot = first_bit(r.v);
            if (!pivot) continue;
            r.pivot = *pivot;
            basis_.push_back(std::move(r));
        }
    }

    std::size_t rank() const { return basis_.size(); }

    /// +1 or -1 when +-p is in the group; 0 when p anticommutes with a
    /// generator; nullopt when p commutes with every generator but lies outside
    /// the group (the generators do not fix the state).
    std::optional<int> expectation(const PauliString& p) const {
        for (const auto& g : gens_) {
            if (!commutes(g, p)) return 0;
        }
        Row r{vec(p), std::vector<bool>(gens_.size(), false), 0};
        reduce(r);
        if (first_bit(r.v)) return std::nullopt;
        PauliString acc(n_);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (r.combo[i]) acc *= gens_[i];
        }
        return acc.sign() * p.sign();
    }

   private:
    struct Row {
        std::vector<std::uint64_t> v;
        std::vector<bool> combo;
        std::size_t pivot;
    };

    static std::vector<std::uint64_t> vec(const PauliString& p) {
        std::vector<std::uint64_t> out(p.x_words().begin(), p.x_words().end());
        out.insert(out.end(), p.z_words().begin(), p.z_words().end());
        return out;
    }

    static std::optional<std::size_t> first_bit(const std::vector<std::uint64_t>& v) {
        for (std::size_t w = 0; w < v.size(); ++w) {
            if (v[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
        }
        return std::nullopt;
    }

    void reduce(Row& r) const {
        for (const auto& b : basis_) {
            if ((r.v[b.pivot >> 6] >> (b.pivot & 63)) & 1u) {
                for (std::size_t w = 0; w < r.v.size(); ++w) r.v[w] ^= b.v[w];
                for (std::size_t i = 0; i < r.combo.size(); ++i) r.combo[i] = r.combo[i] != b.combo[i];
            }
        }
    }

    std::size_t n_ = 0;
    std::vector<PauliString> gens_;
    std::vector<Row> basis_;
};

/// Logical strings of a torus with reference lines at 1: the Z row along n1
/// through the horizontal qubits at n2 = 1, the X column along n2 through the
/// horizontal qubits at n1 = 1/2, and their vertical-qubit counterparts.
struct TorusLogicals {
    PauliString z_row;  // pairs with chi, cos(theta_u)
    PauliString x_col;  // pairs with chi, sin(theta_u)
    PauliString z_col;  // pairs with zeta, cos(theta_v)
    PauliString x_row;  // pairs with zeta, sin(theta_v)
};

inline TorusLogicals torus_logicals(const ModelSpec& m) {
    if (!m.is_torus()) throw GeometryError("logical strings need a torus model");
    const SquareLattice lat = m.lattice();
    std::vector<std::size_t> zr, xc, zc, xr;
    for (int a = 1; a <= lat.n1(); ++a) {
        zr.push_back(lat.h(a - 1, 1));
        xr.push_back(lat.v(a, 1));
    }
    for (int k = 1; k <= lat.n2(); ++k) {
        xc.push_back(lat.h(0, k));
        zc.push_back(lat.v(1, k));
    }
    const std::size_t n = m.n_qubits();
    return {PauliString::uniform(n, zr, 'Z'), PauliString::uniform(n, xc, 'X'), PauliString::uniform(n, zc, 'Z'),
            PauliString::uniform(n, xr, 'X')};
}

/// Signed model terms; on a torus at zero angles also chi * Z row and
/// zeta * Z column, which complete the group that fixes the state.
inline StabilizerGroup stabilizer_group(const ModelSpec& m, const QuantumNumbers& q) {
    validate(m, q);
    std::vector<PauliString> gens;
    for (std::size_t i = 0; i < m.terms().size(); ++i) {
        PauliString p = m.terms()[i].op;
        p.set_sign(q.values[i]);
        gens.push_back(std::move(p));
    }
    if (q.torus && q.torus->theta_u == 0.0 && q.torus->theta_v == 0.0) {
        auto l = torus_logicals(m);
        l.z_row.set_sign(q.torus->chi);
        l.z_col.set_sign(q.torus->zeta);
        gens.push_back(l.z_row);
        gens.push_back(l.z_col);
    }
    return StabilizerGroup(std::move(gens));
}

/// Matrix-product eigenstate of the trestle: amplitude
/// 2^{-N/2} prod_n x_n^{(1 - s_{2n+1})/2} when s_{2n} = s_{2n-1} z_n s_{2n+1}
/// for every n (labels periodic mod 2N), else 0.
inline DenseState mps_trestle_state(const ModelSpec& m, const QuantumNumbers& q) {
    const auto* tr = std::get_if<Trestle>(&m.geometry());
    if (!tr) throw MismatchError("model is not a trestle");
    if (tr->n > 10) throw SizeError("matrix-product oracle is capped at N = 10");
    validate(m, q);
    const int n = tr->n;
    const std::size_t nq = m.n_qubits();
    std::vector<int> z(static_cast<std::size_t>(n) + 1), x(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        z[static_cast<std::size_t>(k)] = q.at(m, "Z" + std::to_string(k));
        x[static_cast<std::size_t>(k)] = q.at(m, "X" + std::to_string(k));
    }
    const double norm = std::pow(2.0, -0.5 * n);
    std::vector<std::complex<double>> amps(std::size_t{1} << nq, 0.0);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        auto s = [&](int label) { return ((i >> ((label - 1) % static_cast<int>(nq))) & 1u) ? -1 : 1; };
        double a = norm;
        for (int k = 1; k <= n && a != 0.0; ++k) {
            if (s(2 * k) != s(2 * k - 1) * z[static_cast<std::size_t>(k)] * s(2 * k + 1)) a = 0.0;
            if (s(2 * k + 1) == -1) a *= x[static_cast<std::size_t>(k)];
        }
        amps[i] = a;
    }
    return DenseState::from_amplitudes(std::move(amps));
}

/// Tensor eigenstate of the graph model: bond bits tau are free, each site
/// bit obeys s_n = z_n prod tau over incident bonds, and the amplitude is
/// 2^{-N_b/2} prod_b x_b^{(1 - tau_b)/2}.
inline DenseState graph_state_amplitudes(const ModelSpec& m, const QuantumNumbers& q) {
    const auto* g = std::get_if<Graph>(&m.geometry());
    if (!g) throw MismatchError("model is not a graph");
    if (m.n_qubits() > 20) throw SizeError("graph amplitude oracle is capped at 20 qubits");
    validate(m, q);
    const std::size_t ns = static_cast<std::size_t>(g->nodes), nb = g->bonds.size();
    std::vector<int> zs(ns), xb(nb);
    for (std::size_t s = 0; s < ns; ++s) zs[s] = q.at(m, "Z" + std::to_string(s + 1));
    for (std::size_t j = 0; j < nb; ++j) {
        xb[j] = q.at(m, "X(" + std::to_string(g->bonds[j].first + 1) + "," + std::to_string(g->bonds[j].second + 1) +
                            ")");
    }
    const double norm = std::pow(2.0, -0.5 * static_cast<double>(nb));
    std::vector<std::complex<double>> amps(std::size_t{1} << m.n_qubits(), 0.0);
    for (std::uint64_t tau = 0; tau < (std::uint64_t{1} << nb); ++tau) {
        std::vector<int> site = zs;
        double a = norm;
        for (std::size_t j = 0; j < nb; ++j) {
            if ((tau >> j) & 1u) {
                site[static_cast<std::size_t>(g->bonds[j].first)] *= -1;
                site[static_cast<std::size_t>(g->bonds[j].second)] *= -1;
                a *= xb[j];
            }
        }
        std::uint64_t index = tau << ns;
        for (std::size_t s = 0; s < ns; ++s) {
            if (site[s] == -1) index |= std::uint64_t{1} << s;
        }
        amps[index] = a;
    }
    return DenseState::from_amplitudes(std::move(amps));
}

/// Energy of the sector. On a torus the two reference terms are replaced by
/// the accumulation contributions I_ref * (product of all other values of the
/// same type); with couplings zeroed at the references they vanish.
inline double energy(const ModelSpec& m, const QuantumNumbers& q) {
    validate(m, q);
    double e = 0.0;
    if (!m.is_torus()) {
        for (std::size_t i = 0; i < m.terms().size(); ++i) e += m.terms()[i].coupling * q.values[i];
        return e;
    }
    const std::size_t xr = m.term_index(torus_x_reference()), zr = m.term_index(torus_z_reference());
    int px = 1, pz = 1;
    for (std::size_t i = 0; i < m.terms().size(); ++i) {
        if (i == xr || i == zr) continue;
        e += m.terms()[i].coupling * q.values[i];
        (m.terms()[i].kind == TermKind::x ? px : pz) *= q.values[i];
    }
    return e + m.terms()[xr].coupling * px + m.terms()[zr].coupling * pz;
}

/// <H> from term expectations of a simulated state.
template <class State>
double energy_expectation(const State& s, const ModelSpec& m) {
    double e = 0.0;
    for (const auto& t : m.terms()) {
        if (t.coupling != 0.0) e += t.coupling * static_cast<double>(s.expectation(t.op));
    }
    return e;
}

namespace detail {

template <class State>
VerificationReport term_checks(const State& s, const ModelSpec& m, const QuantumNumbers& q, double tol) {
    VerificationReport r;
    for (std::size_t i = 0; i < m.terms().size(); ++i) {
        r.add("term " + m.terms()[i].label, static_cast<double>(s.expectation(m.terms()[i].op)), q.values[i], tol);
    }
    r.add("energy", energy_expectation(s, m), energy(m, q), 1e-9);
    return r;
}

}  // namespace detail

/// Runs a prepared circuit on the chosen engine and checks every term.
inline VerificationReport eigenstate_check(const ModelSpec& m, const QuantumNumbers& q, const StatePreparation& prep,
                                           Engine engine) {
    validate(m, q);
    if (engine == Engine::dense) {
        return detail::term_checks(simulate_dense(prep.circuit, prep.input), m, q, 1e-10);
    }
    return detail::term_checks(simulate_tableau(prep.circuit, prep.input), m, q, 0.0);
}

inline VerificationReport eigenstate_check(const ModelSpec& m, const QuantumNumbers& q, Engine engine) {
    return eigenstate_check(m, q, prepare_eigenstate(m, q), engine);
}

namespace detail {

inline std::string pauli_name(std::size_t q, char op) { return std::string(1, op) + std::to_string(q + 1); }

/// Algebraic value of p in the stabilizer group, if decided.
inline std::optional<double> expected_value(const StabilizerGroup& g, const PauliString& p) {
    auto e = g.expectation(p);
    if (!e) return std::nullopt;
    return static_cast<double>(*e);
}

}  // namespace detail

/// Correlation laws of a built eigenstate (dense state or tableau):
///   single-qubit Paulis vanish; two-point functions on distinct qubits vanish
///   on the trestle and match the algebraic value elsewhere; term values and
///   pairwise term products factorize; on the trestle additionally
///   <S_a^2> = N/2, the odd/even entropy is (N - 1) ln 2 and the odd/even
///   reduced states carry prod X(odd) = prod x and prod Z(even) = prod z.
template <class State>
VerificationReport correlation_suite(const State& s, const ModelSpec& m, const QuantumNumbers& q, double tol) {
    validate(m, q);
    const std::size_t n = m.n_qubits();
    const bool trestle = std::holds_alternative<Trestle>(m.geometry());
    const StabilizerGroup group = stabilizer_group(m, q);
    VerificationReport r;
    static constexpr char ops[3] = {'X', 'Y', 'Z'};

    for (std::size_t a = 0; a < n; ++a) {
        for (char op : ops) {
            r.add("one-point " + detail::pauli_name(a, op), static_cast<double>(s.expectation(PauliString::single(n, a, op))),
                  0.0, tol);
        }
    }

    std::vector<double> pair_sum(3, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (char oa : ops) {
                for (char ob : ops) {
                    PauliString p(n);
                    p.set(a, oa);
                    p.set(b, ob);
                    const double v = static_cast<double>(s.expectation(p));
                    if (oa == ob) pair_sum[static_cast<std::size_t>(oa == 'X' ? 0 : oa == 'Y' ? 1 : 2)] += v;
                    std::optional<double> want = trestle ? std::optional<double>(0.0) : detail::expected_value(group, p);
                    if (!want) continue;
                    r.add("two-point " + detail::pauli_name(a, oa) + " " + detail::pauli_name(b, ob), v, *want, tol);
                }
            }
        }
    }

    for (std::size_t i = 0; i < m.terms().size(); ++i) {
        r.add("term " + m.terms()[i].label, static_cast<double>(s.expectation(m.terms()[i].op)), q.values[i], tol);
    }
    for (std::size_t i = 0; i < m.terms().size(); ++i) {
        for (std::size_t j = i + 1; j < m.terms().size(); ++j) {
            const PauliString p = m.terms()[i].op * m.terms()[j].op;
            r.add("product " + m.terms()[i].label + " " + m.terms()[j].label, static_cast<double>(s.expectation(p)),
                  q.values[i] * q.values[j], tol);
        }
    }

    if (trestle) {
        const int big_n = std::get<Trestle>(m.geometry()).n;
        // S_a = (1/2) sum_l sigma^a_l, so <S_a^2> = (2N + 2 sum_{l<l'} <s_l s_l'>) / 4.
        for (std::size_t k = 0; k < 3; ++k) {
            const double s2 = (static_cast<double>(n) + 2.0 * pair_sum[k]) / 4.0;
            r.add(std::string("S") + static_cast<char>(std::tolower(ops[k])) + "^2", s2, big_n / 2.0, 1e-9);
        }
        std::vector<std::size_t> odd, even;
        for (std::size_t l = 0; l < n; ++l) (l % 2 == 0 ? odd : even).push_back(l);
        r.add("entropy odd", s.entropy(odd), (big_n - 1) * std::numbers::ln2, 1e-9);
        r.add("entropy even", s.entropy(even), (big_n - 1) * std::numbers::ln2, 1e-9);
        int px = 1, pz = 1;
        for (int k = 1; k <= big_n; ++k) {
            px *= q.at(m, "X" + std::to_string(k));
            pz *= q.at(m, "Z" + std::to_string(k));
        }
        r.add("odd X string", static_cast<double>(s.expectation(PauliString::uniform(n, odd, 'X'))), px, tol);
        r.add("even Z string", static_cast<double>(s.expectation(PauliString::uniform(n, even, 'Z'))), pz, tol);
    }
    return r;
}

/// Dense torus eigenstate for the given sector.
inline DenseState torus_state(const ModelSpec& m, const QuantumNumbers& q) {
    auto prep = build_torus_circuit(m, q);
    return simulate_dense(prep.circuit, prep.input);
}

/// The four (chi, zeta) states of one plaquette sector: mutually orthogonal,
/// equal energy, equal term values, and logical strings
///   <Z row> = chi cos(theta_u), <X column> = chi sin(theta_u),
///   <Z column> = zeta cos(theta_v), <X row> = zeta sin(theta_v).
inline VerificationReport torus_degeneracy_check(const ModelSpec& m, const QuantumNumbers& base) {
    validate(m, base);
    if (!m.is_torus()) throw GeometryError("degeneracy check needs a torus model");
    VerificationReport r;
    const TorusLogicals logic = torus_logicals(m);
    std::vector<DenseState> states;
    std::vector<std::string> names;
    for (int chi : {1, -1}) {
        for (int zeta : {1, -1}) {
            QuantumNumbers q = base;
            q.torus->chi = chi;
            q.torus->zeta = zeta;
            const std::string tag = "chi=" + std::to_string(chi) + " zeta=" + std::to_string(zeta);
            states.push_back(torus_state(m, q));
            names.push_back(tag);
            const DenseState& s = states.back();
            for (std::size_t i = 0; i < m.terms().size(); ++i) {
                r.add(tag + " term " + m.terms()[i].label, s.expectation(m.terms()[i].op), q.values[i], 1e-10);
            }
            r.add(tag + " energy", energy_expectation(s, m), energy(m, base), 1e-9);
            const double tu = q.torus->theta_u, tv = q.torus->theta_v;
            r.add(tag + " Z row", s.expectation(logic.z_row), chi * std::cos(tu), 1e-10);
            r.add(tag + " X column", s.expectation(logic.x_col), chi * std::sin(tu), 1e-10);
            r.add(tag + " Z column", s.expectation(logic.z_col), zeta * std::cos(tv), 1e-10);
            r.add(tag + " X row", s.expectation(logic.x_row), zeta * std::sin(tv), 1e-10);
        }
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            r.add_at_most("overlap " + names[i] + " / " + names[j], fidelity(states[i], states[j]), 1e-9);
        }
    }
    return r;
}

/// States at arbitrary (theta_u, theta_v) lie in the span of the four
/// zero-angle (chi, zeta) states, stay eigenstates of every term, and keep the
/// sector energy.
inline VerificationReport superposition_span_check(const ModelSpec& m, const QuantumNumbers& base,
                                                   const std::vector<std::pair<double, double>>& angles) {
    validate(m, base);
    if (!m.is_torus()) throw GeometryError("span check needs a torus model");
    std::vector<DenseState> basis;
    for (int chi : {1, -1}) {
        for (int zeta : {1, -1}) {
            QuantumNumbers q = base;
            *q.torus = TorusExtras{chi, zeta, 0.0, 0.0};
            basis.push_back(torus_state(m, q));
        }
    }
    VerificationReport r;
    for (auto [tu, tv] : angles) {
        QuantumNumbers q = base;
        q.torus->theta_u = tu;
        q.torus->theta_v = tv;
        const DenseState s = torus_state(m, q);
        // Residual of the orthogonal projection onto the span.
        std::vector<std::complex<double>> rest(s.amplitudes().begin(), s.amplitudes().end());
        for (const auto& b : basis) {
            const auto c = b.inner(s);
            for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= c * b.amplitudes()[i];
        }
        double res = 0.0;
        for (const auto& v : rest) res += std::norm(v);
        const std::string tag = "theta_u=" + std::to_string(tu) + " theta_v=" + std::to_string(tv);
        r.add_at_most(tag + " span residual", std::sqrt(res), 1e-9);
        for (std::size_t i = 0; i < m.terms().size(); ++i) {
            r.add(tag + " term " + m.terms()[i].label, s.expectation(m.terms()[i].op), q.values[i], 1e-10);
        }
        r.add(tag + " energy", energy_expectation(s, m), energy(m, base), 1e-9);
    }
    return r;
}

}  // namespace eqc

// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance               runs every criterion
//   acceptance --criterion k runs criterion k only

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "support/oracles.hpp"

namespace {

using namespace eqc;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        if (notes.size() < 12) notes.push_back(what);
    }

    void absorb(const VerificationReport& r, const std::string& context) {
        for (const auto& c : r.checks) {
            if (c.pass) continue;
            char buf[160];
            std::snprintf(buf, sizeof buf, ": measured %.12g expected %.12g", c.measured, c.expected);
            require(false, context + " " + c.name + buf);
        }
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Instance {
    std::string name;
    ModelSpec model;
};

std::vector<Instance> property_instances() {
    std::vector<Instance> out;
    for (int n = 2; n <= 6; ++n) out.push_back({"trestle N=" + std::to_string(n), build_trestle(n)});
    for (const auto& g : eqc::testing::graph_cases()) out.push_back({"graph " + g.name, build_graph(g.nodes, g.bonds)});
    out.push_back({"cylinder 2x2", build_cylinder(2, 2)});
    out.push_back({"cylinder 3x2", build_cylinder(3, 2)});
    out.push_back({"sheet 2x2", build_sheet(2, 2)});
    out.push_back({"sheet 3x2", build_sheet(3, 2)});
    out.push_back({"torus 2x2", build_torus(2, 2)});
    return out;
}

constexpr int sectors_per_instance = 50;

std::uint64_t sector_seed(std::size_t instance, int k) { return 1000 * (instance + 1) + static_cast<std::uint64_t>(k); }

Outcome counts_and_depths() {
    Outcome o;
    const auto t0 = Clock::now();
    auto cnt = [](const Circuit& c, GateKind k) { return count_of(gate_counts(c), k); };
    for (std::size_t n = 2; n <= 8; ++n) {
        const ModelSpec m = build_trestle(static_cast<int>(n));
        const Circuit c = prepare_eigenstate(m, all_plus(m)).circuit;
        const std::string at = "trestle N=" + std::to_string(n);
        o.require(cnt(c, GateKind::h) == n, at + " H count");
        o.require(cnt(c, GateKind::cnot) == 2 * n, at + " CNOT count");
        o.require(c.depth() == 3, at + " depth " + std::to_string(c.depth()));
    }
    for (std::size_t a = 2; a <= 6; ++a) {
        for (std::size_t b = 2; b <= 6; ++b) {
            const std::string at = std::to_string(a) + "x" + std::to_string(b);
            const ModelSpec cyl = build_cylinder(static_cast<int>(a), static_cast<int>(b));
            const Circuit c = prepare_eigenstate(cyl, all_plus(cyl)).circuit;
            o.require(cnt(c, GateKind::h) == a * b, "cylinder " + at + " H count");
            o.require(cnt(c, GateKind::cnot) == 2 * a * (2 * b - 1), "cylinder " + at + " CNOT count");
            o.require(c.depth() == 4 * b - 1, "cylinder " + at + " depth " + std::to_string(c.depth()));

            const ModelSpec tor = build_torus(static_cast<int>(a), static_cast<int>(b));
            const Circuit t = prepare_eigenstate(tor, all_plus(tor)).circuit;
            auto stage = [&](std::string_view tag) { return count_of(gate_counts(t, {tag}), GateKind::cnot); };
            o.require(stage("U44") == (a - 1) * b, "torus " + at + " U44 CNOTs");
            o.require(stage("U43") == (a - 1) * b, "torus " + at + " U43 CNOTs");
            o.require(stage("U42") == a * (b - 1), "torus " + at + " U42 CNOTs");
            o.require(stage("U41") == 3 * a * (b - 1), "torus " + at + " U41 CNOTs");
            o.require(t.tag_span({"U44", "U43"}) == (a - 1) * b, "torus " + at + " U44+U43 depth");
            o.require(t.tag_span({"U42", "U41"}) <= 7 * (b - 1), "torus " + at + " U42+U41 depth");
        }
    }
    const double s = seconds_since(t0);
    o.require(s < 1.0, "runtime " + fmt("%.3f s", s));
    o.notes.insert(o.notes.begin(), "runtime " + fmt("%.3f s", s));
    return o;
}

Outcome eigenstate_correctness() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto instances = property_instances();
    std::size_t runs = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const ModelSpec& m = instances[i].model;
        for (int k = 0; k < sectors_per_instance; ++k) {
            const QuantumNumbers q = random_quantum_numbers(m, sector_seed(i, k));
            const VerificationReport r = eigenstate_check(m, q, Engine::dense);
            o.absorb(r, instances[i].name + " seed " + std::to_string(sector_seed(i, k)));
            ++runs;
        }
    }
    const double s = seconds_since(t0);
    o.require(s < 120.0, "runtime " + fmt("%.1f s", s));
    o.notes.insert(o.notes.begin(), std::to_string(runs) + " sectors, runtime " + fmt("%.2f s", s));
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const auto instances = property_instances();
    double worst = 0.0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const ModelSpec& m = instances[i].model;
        const bool trestle = std::holds_alternative<Trestle>(m.geometry());
        if (!trestle && !std::holds_alternative<Graph>(m.geometry())) continue;
        for (int k = 0; k < sectors_per_instance; ++k) {
            const QuantumNumbers q = random_quantum_numbers(m, sector_seed(i, k));
            const StatePreparation p = prepare_eigenstate(m, q);
            const DenseState s = simulate_dense(p.circuit, p.input);
            const double f = fidelity(s, trestle ? mps_trestle_state(m, q) : graph_state_amplitudes(m, q));
            worst = std::max(worst, 1.0 - f);
            o.require(f >= 1.0 - 1e-10, instances[i].name + " fidelity " + fmt("%.15f", f));
        }
    }
    o.notes.insert(o.notes.begin(), "worst infidelity " + fmt("%.3g", worst));
    return o;
}

Outcome torus_energy() {
    Outcome o;
    const ModelSpec shape = build_torus(2, 2);
    const ModelSpec m = build_torus(2, 2, eqc::testing::random_couplings(shape, 4242));
    const ModelSpec punctured = punctured_torus(m);
    const auto h = eqc::testing::hamiltonian_matrix(m);
    const auto hp = eqc::testing::hamiltonian_matrix(punctured);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        QuantumNumbers q = random_quantum_numbers(m, 7000 + static_cast<std::uint64_t>(k));
        const DenseState s = torus_state(m, q);
        const auto v = eqc::testing::as_vector(s);
        const double e_h = (v.adjoint() * h * v)(0, 0).real();
        const double e_p = (v.adjoint() * hp * v)(0, 0).real();
        const double formula = energy(m, q);
        worst = std::max(worst, std::abs(formula - e_h));
        o.require(std::abs(formula - e_h) <= 1e-9, "sector " + std::to_string(k) + " energy " + fmt("%.12g", formula) +
                                                       " vs <H> " + fmt("%.12g", e_h));

        // Without the reference couplings only the plain sum over the
        // remaining terms is left.
        double plain = 0.0;
        for (std::size_t i = 0; i < m.terms().size(); ++i) {
            const auto& label = m.terms()[i].label;
            if (label == torus_x_reference() || label == torus_z_reference()) continue;
            plain += m.terms()[i].coupling * q.values[i];
        }
        const double e_punct = energy(punctured, q);
        o.require(e_punct == plain, "sector " + std::to_string(k) + " punctured energy keeps an accumulation term");
        o.require(std::abs(e_punct - e_p) <= 1e-9, "sector " + std::to_string(k) + " punctured <H> " + fmt("%.12g", e_p));
    }
    o.notes.insert(o.notes.begin(), "worst |E - <H>| " + fmt("%.3g", worst));
    return o;
}

Outcome correlation_laws() {
    Outcome o;
    std::vector<std::string> tally;
    for (int n = 2; n <= 6; ++n) {
        const ModelSpec m = build_trestle(n);
        std::size_t checks = 0, failed = 0;
        for (int k = 0; k < 5; ++k) {
            const QuantumNumbers q = k == 0 ? all_plus(m) : random_quantum_numbers(m, 300 + static_cast<std::uint64_t>(k));
            const StatePreparation p = prepare_eigenstate(m, q);
            const std::string at = "N=" + std::to_string(n) + " sector " + std::to_string(k);
            const VerificationReport d = correlation_suite(simulate_dense(p.circuit, p.input), m, q, 1e-10);
            const VerificationReport t = correlation_suite(simulate_tableau(p.circuit, p.input), m, q, 0.0);
            o.absorb(d, at + " dense");
            o.absorb(t, at + " tableau");
            checks += d.checks.size() + t.checks.size();
            failed += d.failures() + t.failures();
        }
        tally.push_back("N=" + std::to_string(n) + ": " + std::to_string(failed) + " of " + std::to_string(checks) +
                        " checks failed");
    }
    o.notes.insert(o.notes.begin(), tally.begin(), tally.end());
    return o;
}

Outcome degeneracy() {
    Outcome o;
    const ModelSpec m = build_torus(2, 2);
    for (int k = 0; k < 8; ++k) {
        QuantumNumbers q = k == 0 ? all_plus(m) : random_quantum_numbers(m, 500 + static_cast<std::uint64_t>(k));
        *q.torus = TorusExtras{1, 1, 0.0, 0.0};
        o.absorb(torus_degeneracy_check(m, q), "sector " + std::to_string(k));
        std::vector<std::pair<double, double>> angles;
        for (int a = 0; a < 5; ++a) {
            for (int b = 0; b < 5; ++b) angles.emplace_back(0.37 + 1.3 * a, -0.81 + 1.1 * b);
        }
        o.absorb(superposition_span_check(m, q, angles), "sector " + std::to_string(k));
    }
    return o;
}

Outcome engine_equivalence() {
    Outcome o;
    auto instances = property_instances();
    std::size_t compared = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const ModelSpec& m = instances[i].model;
        if (m.n_qubits() > 12) continue;
        const std::size_t n = m.n_qubits();
        for (int k = 0; k < 10; ++k) {
            QuantumNumbers q = random_quantum_numbers(m, sector_seed(i, k));
            if (q.torus) q.torus->theta_u = q.torus->theta_v = 0.0;
            const StatePreparation p = prepare_eigenstate(m, q);
            const DenseState d = simulate_dense(p.circuit, p.input);
            const Tableau t = simulate_tableau(p.circuit, p.input);
            std::vector<PauliString> probes;
            for (const auto& term : m.terms()) probes.push_back(term.op);
            SplitMix64 rng(sector_seed(i, k));
            for (int r = 0; r < 200; ++r) probes.push_back(eqc::testing::random_pauli(n, rng));
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    for (char oa : {'X', 'Y', 'Z'}) {
                        for (char ob : {'X', 'Y', 'Z'}) {
                            PauliString pp(n);
                            pp.set(a, oa);
                            pp.set(b, ob);
                            probes.push_back(pp);
                        }
                    }
                }
            }
            for (const auto& pr : probes) {
                const double dv = d.expectation(pr);
                const int tv = t.expectation(pr);
                o.require(std::abs(dv - tv) <= 1e-10, instances[i].name + " " + to_text(pr) + " dense " + fmt("%.12g", dv) +
                                                          " tableau " + std::to_string(tv));
                ++compared;
            }
        }
    }
    const auto t0 = Clock::now();
    const ModelSpec big = build_torus(20, 20);
    const QuantumNumbers q = all_plus(big);
    const VerificationReport r = eigenstate_check(big, q, Engine::tableau);
    const double s = seconds_since(t0);
    o.require(big.n_qubits() == 800, "20x20 torus has " + std::to_string(big.n_qubits()) + " qubits");
    o.require(r.checks.size() == big.terms().size() + 1, "20x20 report is incomplete");
    o.absorb(r, "torus 20x20");
    o.require(s < 10.0, "20x20 runtime " + fmt("%.2f s", s));
    o.notes.insert(o.notes.begin(), std::to_string(compared) + " expectations compared; 20x20 torus " +
                                        std::to_string(r.checks.size()) + " checks in " + fmt("%.2f s", s));
    return o;
}

Outcome completeness() {
    Outcome o;
    for (int n = 2; n <= 3; ++n) {
        const ModelSpec shape = build_trestle(n);
        const ModelSpec m = build_trestle(n, eqc::testing::random_couplings(shape, 900 + static_cast<std::uint64_t>(n)));
        const std::size_t terms = m.terms().size();
        const Eigen::Index dim = Eigen::Index{1} << m.n_qubits();
        o.require(std::size_t{1} << terms == static_cast<std::size_t>(dim), "sector count differs from dimension");
        eqc::testing::Matrix basis(dim, dim);
        std::vector<double> energies;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << terms); ++mask) {
            QuantumNumbers q = all_plus(m);
            for (std::size_t i = 0; i < terms; ++i) q.values[i] = (mask >> i) & 1u ? -1 : 1;
            const StatePreparation p = prepare_eigenstate(m, q);
            basis.col(static_cast<Eigen::Index>(mask)) = eqc::testing::as_vector(simulate_dense(p.circuit, p.input));
            energies.push_back(energy(m, q));
        }
        const double gram_err =
            (basis.adjoint() * basis - eqc::testing::Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
        o.require(gram_err <= 1e-9, "N=" + std::to_string(n) + " Gram error " + fmt("%.3g", gram_err));

        const auto h = eqc::testing::hamiltonian_matrix(m);
        const double residual = (h * basis - basis * Eigen::Map<Eigen::VectorXd>(energies.data(), dim)
                                                         .cast<std::complex<double>>()
                                                         .asDiagonal()
                                                         .toDenseMatrix())
                                    .cwiseAbs()
                                    .maxCoeff();
        o.require(residual <= 1e-9, "N=" + std::to_string(n) + " eigen residual " + fmt("%.3g", residual));
        Eigen::SelfAdjointEigenSolver<eqc::testing::Matrix> solver(h, Eigen::EigenvaluesOnly);
        std::vector<double> spectrum(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
        std::sort(energies.begin(), energies.end());
        std::sort(spectrum.begin(), spectrum.end());
        double worst = 0.0;
        for (Eigen::Index k = 0; k < dim; ++k) worst = std::max(worst, std::abs(energies[k] - spectrum[k]));
        o.require(worst <= 1e-9, "N=" + std::to_string(n) + " spectrum mismatch " + fmt("%.3g", worst));
        o.notes.push_back("N=" + std::to_string(n) + ": Gram error " + fmt("%.2g", gram_err) + ", spectrum error " +
                          fmt("%.2g", worst));
    }
    return o;
}

struct Criterion {
    const char* description;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {"gate-count and depth identities", counts_and_depths},
        {"eigenstate correctness over random sectors", eigenstate_correctness},
        {"matrix-product and graph amplitude oracles", oracle_equivalence},
        {"torus energy with accumulation terms", torus_energy},
        {"trestle correlation and entropy laws", correlation_laws},
        {"torus fourfold degeneracy and angle span", degeneracy},
        {"tableau and dense agreement, 20x20 torus", engine_equivalence},
        {"trestle completeness and spectrum", completeness},
    };
    return list;
}

bool report(int k) {
    const Criterion& c = criteria()[static_cast<std::size_t>(k - 1)];
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o.pass = false;
        o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s - %s\n", k, o.pass ? "PASS" : "FAIL", c.description);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            const int k = std::atoi(argv[++i]);
            if (k < 1 || k > static_cast<int>(criteria().size())) {
                std::fprintf(stderr, "criterion must be between 1 and %zu\n", criteria().size());
                return 2;
            }
            selected.push_back(k);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion k]\n");
            return 2;
        }
    }
    if (selected.empty()) {
        for (int k = 1; k <= static_cast<int>(criteria().size()); ++k) selected.push_back(k);
    }
    bool all = true;
    for (int k : selected) all = report(k) && all;
    return all ? 0 : 1;
}

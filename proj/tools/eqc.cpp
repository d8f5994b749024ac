// eqc: build models, synthesize eigenstate circuits, verify them.
//
//   eqc build   --geometry torus --n1 3 --n2 3
//   eqc circuit --geometry trestle --n 4 --qnums random --seed 7 --qasm-out t.qasm
//   eqc counts  --geometry cylinder --n1 4 --n2 3
//   eqc verify  --geometry torus --n1 2 --n2 2 --engine both
//
// Exit status: 0 on success (verify: every check passed), 1 when a check
// fails, 2 on configuration or input errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "eqc/cli.hpp"

namespace {

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw eqc::ParseError("cannot write " + path);
    out << text;
}

void add_model_options(CLI::App& cmd, eqc::RunConfig& cfg, bool with_qnums) {
    cmd.add_option("--geometry", cfg.geometry, "trestle, graph, cylinder, sheet or torus")->required();
    cmd.add_option("--n", cfg.n, "trestle size N (2N qubits)");
    cmd.add_option("--n1", cfg.n1, "lattice extent along n1");
    cmd.add_option("--n2", cfg.n2, "lattice extent along n2");
    cmd.add_option("--nodes", cfg.nodes, "graph node count");
    cmd.add_option("--bonds", cfg.bonds, "graph bonds, 1-based, e.g. 1-2,2-3");
    cmd.add_option("--coupling-iz", cfg.coupling_iz, "uniform Z-term coupling")->default_val(-1.0);
    cmd.add_option("--coupling-ix", cfg.coupling_ix, "uniform X-term coupling")->default_val(-1.0);
    cmd.add_option("--couplings", cfg.couplings_file, "per-term couplings JSON file");
    cmd.add_option("--out", cfg.out, "output file (default stdout)");
    if (!with_qnums) return;
    cmd.add_option("--qnums", cfg.qnums, "all-plus, random, or a qnums JSON file")->default_val("all-plus");
    cmd.add_option("--seed", cfg.seed, "seed for --qnums random")->default_val(1);
    cmd.add_option("--chi", cfg.chi, "torus chi (+1 or -1)");
    cmd.add_option("--zeta", cfg.zeta, "torus zeta (+1 or -1)");
    cmd.add_option("--theta-u", cfg.theta_u, "torus rotation angle theta_u (radians)");
    cmd.add_option("--theta-v", cfg.theta_v, "torus rotation angle theta_v (radians)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact eigenstate circuits for stabilizer lattice models"};
    app.require_subcommand(1);
    eqc::RunConfig cfg;

    auto* build = app.add_subcommand("build", "print the model as JSON");
    add_model_options(*build, cfg, false);
    auto* circuit = app.add_subcommand("circuit", "print the preparation circuit as JSON");
    add_model_options(*circuit, cfg, true);
    circuit->add_option("--qasm-out", cfg.qasm_out, "also write OpenQASM 2 text here");
    auto* counts = app.add_subcommand("counts", "print gate counts and depth");
    add_model_options(*counts, cfg, true);
    auto* verify = app.add_subcommand("verify", "simulate and check every claim, as JSON lines");
    add_model_options(*verify, cfg, true);
    verify->add_option("--engine", cfg.engine, "dense, tableau or both")->default_val("dense");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            emit(eqc::cmd_build(cfg), cfg.out);
        } else if (circuit->parsed()) {
            std::string qasm;
            emit(eqc::cmd_circuit(cfg, &qasm), cfg.out);
            if (!cfg.qasm_out.empty()) emit(qasm, cfg.qasm_out);
        } else if (counts->parsed()) {
            emit(eqc::cmd_counts(cfg), cfg.out);
        } else {
            const eqc::VerificationReport r = eqc::cmd_verify(cfg);
            emit(eqc::report_to_jsonl(r), cfg.out);
            std::cerr << r.checks.size() - r.failures() << "/" << r.checks.size() << " checks passed\n";
            return r.all_passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "eqc: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

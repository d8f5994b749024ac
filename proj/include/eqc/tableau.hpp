#pragma once

// Stabilizer tableau simulation for Clifford circuits.
//
// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers. Each row is a
// signed Pauli string with its x and z bits packed 64 per word; the sign of a
// stabilizer row is its eigenvalue on the state. Gate updates follow the
// standard CHP conjugation rules.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "eqc/circuit.hpp"
#include "eqc/errors.hpp"
#include "eqc/lattice.hpp"
#include "eqc/pauli.hpp"

namespace eqc {

class Tableau {
   public:
    /// Computational basis product state; bits[q] = +1 -> |0>, -1 -> |1>.
    static Tableau init_basis(std::span<const int> bits) {
        Tableau t(bits.size());
        for (std::size_t q = 0; q < t.n_; ++q) {
            if (bits[q] != 1 && bits[q] != -1) throw MismatchError("product state bits must be +1 or -1");
            t.flip(t.x_row(q), q);
            t.flip(t.z_row(t.n_ + q), q);
            t.r_[t.n_ + q] = bits[q] == -1;
        }
        return t;
    }

    static Tableau init_basis(std::initializer_list<int> bits) {
        return init_basis(std::span<const int>(bits.begin(), bits.size()));
    }

    std::size_t n_qubits() const { return n_; }

    void h(std::size_t q) {
        check_qubit(q);
        const std::size_t w = q >> 6;
        const std::uint64_t m = std::uint64_t{1} << (q & 63);
        for (std::size_t row = 0; row < 2 * n_; ++row) {
            std::uint64_t& xw = x_[row * words_ + w];
            std::uint64_t& zw = z_[row * words_ + w];
            const bool xb = xw & m, zb = zw & m;
            r_[row] ^= xb && zb;
            if (xb != zb) {
                xw ^= m;
                zw ^= m;
            }
        }
    }

    void cnot(std::size_t control, std::size_t target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) throw DimensionError("CNOT control equals target");
        const std::size_t wc = control >> 6, wt = target >> 6;
        const unsigned bc = control & 63, bt = target & 63;
        for (std::size_t row = 0; row < 2 * n_; ++row) {
            std::uint64_t* xr = &x_[row * words_];
            std::uint64_t* zr = &z_[row * words_];
            const bool xc = (xr[wc] >> bc) & 1u, zc = (zr[wc] >> bc) & 1u;
            const bool xt = (xr[wt] >> bt) & 1u, zt = (zr[wt] >> bt) & 1u;
            r_[row] ^= xc && zt && (xt == zc);
            if (xc) xr[wt] ^= std::uint64_t{1} << bt;
            if (zt) zr[wc] ^= std::uint64_t{1} << bc;
        }
    }

    void x(std::size_t q) {
        check_qubit(q);
        for (std::size_t row = 0; row < 2 * n_; ++row) r_[row] ^= bit(z_row(row), q);
    }

    void z(std::size_t q) {
        check_qubit(q);
        for (std::size_t row = 0; row < 2 * n_; ++row) r_[row] ^= bit(x_row(row), q);
    }

    /// RY is accepted only at angle 0, where it is the identity.
    void apply(const Gate& g) {
        switch (g.kind) {
            case GateKind::h: h(g.q0); break;
            case GateKind::x: x(g.q0); break;
            case GateKind::z: z(g.q0); break;
            case GateKind::cnot: cnot(g.q0, g.q1); break;
            case GateKind::ry:
                if (g.theta != 0.0) {
                    throw UnsupportedGateError("RY(" + std::to_string(g.theta) + ") on qubit " + std::to_string(g.q0) +
                                               " is not a Clifford gate");
                }
                check_qubit(g.q0);
                break;
        }
    }

    void run(const Circuit& c) {
        if (c.n_qubits() != n_) throw DimensionError("circuit and tableau sizes differ");
        for (const auto& layer : c.layers()) {
            for (const auto& g : layer) apply(g);
        }
    }

    /// +1 or -1 when +-p belongs to the stabilizer group, 0 otherwise.
    int expectation(const PauliString& p) const {
        if (p.n_qubits() != n_) throw DimensionError("Pauli and tableau sizes differ");
        auto px = p.x_words(), pz = p.z_words();
        for (std::size_t i = 0; i < n_; ++i) {
            if (anticommutes(n_ + i, px, pz)) return 0;
        }
        // p = +- prod of the stabilizers whose destabilizer partner anticommutes with p.
        std::vector<std::uint64_t> ax(words_, 0), az(words_, 0);
        int phase = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!anticommutes(i, px, pz)) continue;
            const std::size_t row = n_ + i;
            const std::uint64_t* sx = x_row(row);
            const std::uint64_t* sz = z_row(row);
            for (std::size_t w = 0; w < words_; ++w) {
                phase += bits::product_phase(ax[w], az[w], sx[w], sz[w]);
                ax[w] ^= sx[w];
                az[w] ^= sz[w];
            }
            if (r_[row]) phase += 2;
        }
        phase = ((phase % 4) + 4) % 4;
        if (phase & 1) throw PhaseError("stabilizer product has an imaginary phase");
        const int sign = phase == 2 ? -1 : 1;
        return sign * p.sign();
    }

    /// Entanglement entropy (nats) between `subset` and its complement.
    double entropy(std::span<const std::size_t> subset) const {
        std::vector<bool> in_a(n_, false);
        for (auto q : subset) {
            check_qubit(q);
            if (in_a[q]) throw DimensionError("repeated qubit in subset");
            in_a[q] = true;
        }
        if (subset.empty() || subset.size() >= n_) throw DimensionError("entropy subset must be nonempty and proper");
        std::vector<PauliString> cut;
        cut.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            PauliString p(subset.size());
            for (std::size_t j = 0; j < subset.size(); ++j) {
                p.set_x(j, bit(x_row(n_ + i), subset[j]));
                p.set_z(j, bit(z_row(n_ + i), subset[j]));
            }
            cut.push_back(std::move(p));
        }
        const std::size_t rank = gf2_rank(cut);
        return static_cast<double>(rank - subset.size()) * std::numbers::ln2;
    }

    std::vector<PauliString> stabilizers() const { return rows(n_); }
    std::vector<PauliString> destabilizers() const { return rows(0); }

    /// Stabilizers commute pairwise, destabilizer i anticommutes only with
    /// stabilizer i, destabilizers commute, and the generators are independent.
    bool check_invariants() const {
        const auto s = stabilizers(), d = destabilizers();
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (!commutes(s[i], s[j]) || !commutes(d[i], d[j])) return false;
                if (commutes(d[i], s[j]) != (i != j)) return false;
            }
        }
        return gf2_rank(s) == n_;
    }

   private:
    explicit Tableau(std::size_t n)
        : n_(n), words_(bits::word_count(n)), x_(2 * n * words_, 0), z_(2 * n * words_, 0), r_(2 * n, 0) {}

    std::uint64_t* x_row(std::size_t row) { return &x_[row * words_]; }
    std::uint64_t* z_row(std::size_t row) { return &z_[row * words_]; }
    const std::uint64_t* x_row(std::size_t row) const { return &x_[row * words_]; }
    const std::uint64_t* z_row(std::size_t row) const { return &z_[row * words_]; }

    static bool bit(const std::uint64_t* w, std::size_t q) { return (w[q >> 6] >> (q & 63)) & 1u; }
    static void flip(std::uint64_t* w, std::size_t q) { w[q >> 6] ^= std::uint64_t{1} << (q & 63); }

    bool anticommutes(std::size_t row, std::span<const std::uint64_t> px, std::span<const std::uint64_t> pz) const {
        const std::uint64_t* rx = x_row(row);
        const std::uint64_t* rz = z_row(row);
        unsigned parity = 0;
        for (std::size_t w = 0; w < words_; ++w) parity ^= std::popcount((rx[w] & pz[w]) ^ (rz[w] & px[w])) & 1u;
        return parity;
    }

    std::vector<PauliString> rows(std::size_t first) const {
        std::vector<PauliString> out;
        out.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            PauliString p(n_);
            for (std::size_t w = 0; w < words_; ++w) {
                p.x_words()[w] = x_row(first + i)[w];
                p.z_words()[w] = z_row(first + i)[w];
            }
            p.set_sign(r_[first + i] ? -1 : 1);
            out.push_back(std::move(p));
        }
        return out;
    }

    void check_qubit(std::size_t q) const {
        if (q >= n_) throw DimensionError("qubit " + std::to_string(q) + " out of range");
    }

    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> x_;
    std::vector<std::uint64_t> z_;
    std::vector<std::uint8_t> r_;
};

/// Prepared input followed by the circuit.
inline Tableau simulate_tableau(const Circuit& c, std::span<const int> input) {
    Tableau t = Tableau::init_basis(input);
    t.run(c);
    return t;
}

/// Expectation of every model term, keyed by label.
inline std::map<std::string, int> expectations_report(const Tableau& t, const ModelSpec& m) {
    std::map<std::string, int> out;
    for (const auto& term : m.terms()) out[term.label] = t.expectation(term.op);
    return out;
}

}  // namespace eqc

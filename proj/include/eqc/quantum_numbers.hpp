#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqc/errors.hpp"
#include "eqc/lattice.hpp"

namespace eqc {

/// Quantum numbers of the two qubits that drop out of the transformed torus
/// model, plus the quantization axes u = (sin theta_u, 0, cos theta_u) and
/// v = (sin theta_v, 0, cos theta_v).
struct TorusExtras {
    int chi = 1;
    int zeta = 1;
    double theta_u = 0.0;
    double theta_v = 0.0;
};

/// One +-1 per model term, in ModelSpec term order.
///
/// On a torus the values at the two reference plaquettes are not free: they
/// equal the product of the remaining values of the same type. Use
/// complete_torus_references() after editing free values.
struct QuantumNumbers {
    std::vector<int> values;
    std::optional<TorusExtras> torus;

    int at(const ModelSpec& m, const std::string& label) const { return values.at(m.term_index(label)); }
    void set(const ModelSpec& m, const std::string& label, int v) { values.at(m.term_index(label)) = v; }
};

/// SplitMix64 (Steele, Lea, Flood). Output is fixed by the seed on every
/// platform, which keeps random sectors reproducible in reports.
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// +1 or -1 from the top bit.
    int next_sign() { return (next() >> 63) ? -1 : 1; }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

   private:
    std::uint64_t state_;
};

inline void complete_torus_references(const ModelSpec& m, QuantumNumbers& q) {
    if (!m.is_torus()) return;
    const std::size_t xr = m.term_index(torus_x_reference());
    const std::size_t zr = m.term_index(torus_z_reference());
    int px = 1, pz = 1;
    for (std::size_t i = 0; i < m.terms().size(); ++i) {
        if (i == xr || i == zr) continue;
        (m.terms()[i].kind == TermKind::x ? px : pz) *= q.values.at(i);
    }
    q.values.at(xr) = px;
    q.values.at(zr) = pz;
}

inline QuantumNumbers all_plus(const ModelSpec& m) {
    QuantumNumbers q{std::vector<int>(m.terms().size(), 1), std::nullopt};
    if (m.is_torus()) q.torus = TorusExtras{};
    return q;
}

/// Random +-1 for every free term (and chi, zeta on a torus); angles stay 0.
inline QuantumNumbers random_quantum_numbers(const ModelSpec& m, std::uint64_t seed) {
    SplitMix64 rng(seed);
    QuantumNumbers q = all_plus(m);
    for (auto& v : q.values) v = rng.next_sign();
    if (m.is_torus()) {
        q.torus->chi = rng.next_sign();
        q.torus->zeta = rng.next_sign();
        complete_torus_references(m, q);
    }
    return q;
}

inline void validate(const ModelSpec& m, const QuantumNumbers& q) {
    if (q.values.size() != m.terms().size()) {
        throw MismatchError("expected " + std::to_string(m.terms().size()) + " quantum numbers, got " +
                            std::to_string(q.values.size()));
    }
    for (std::size_t i = 0; i < q.values.size(); ++i) {
        if (q.values[i] != 1 && q.values[i] != -1) {
            throw MismatchError("quantum number of " + m.terms()[i].label + " must be +1 or -1");
        }
    }
    if (m.is_torus() != q.torus.has_value()) {
        throw MismatchError(m.is_torus() ? "torus quantum numbers need chi, zeta and angles"
                                         : "chi/zeta/angles only apply to a torus");
    }
    if (q.torus) {
        if ((q.torus->chi != 1 && q.torus->chi != -1) || (q.torus->zeta != 1 && q.torus->zeta != -1)) {
            throw MismatchError("chi and zeta must be +1 or -1");
        }
        QuantumNumbers completed = q;
        complete_torus_references(m, completed);
        if (completed.values != q.values) {
            throw MismatchError("torus reference quantum numbers " + torus_x_reference() + "/" +
                                torus_z_reference() + " must equal the product of the other values");
        }
    }
}

}  // namespace eqc

#pragma once

// Exact state-vector simulation for small registers.
//
// Qubit q is bit q of the amplitude index (qubit 0 is least significant);
// bit value 0 is the +1 eigenstate of Z.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "eqc/circuit.hpp"
#include "eqc/errors.hpp"
#include "eqc/pauli.hpp"

namespace eqc {

inline constexpr std::size_t max_dense_qubits = 22;

class DenseState {
   public:
    using amplitude = std::complex<double>;

    /// Computational basis product state; bits[q] = +1 -> |0>, -1 -> |1>.
    static DenseState init_product(std::span<const int> bits) {
        DenseState s(bits.size());
        std::uint64_t index = 0;
        for (std::size_t q = 0; q < bits.size(); ++q) {
            if (bits[q] == -1) {
                index |= std::uint64_t{1} << q;
            } else if (bits[q] != 1) {
                throw MismatchError("product state bits must be +1 or -1");
            }
        }
        s.amps_[index] = 1.0;
        return s;
    }

    static DenseState init_product(std::initializer_list<int> bits) {
        return init_product(std::span<const int>(bits.begin(), bits.size()));
    }

    /// Wraps explicit amplitudes; the length must be a power of two.
    static DenseState from_amplitudes(std::vector<amplitude> amps) {
        if (amps.empty() || !std::has_single_bit(amps.size())) {
            throw DimensionError("amplitude count must be a power of two");
        }
        DenseState s(static_cast<std::size_t>(std::countr_zero(amps.size())));
        s.amps_ = std::move(amps);
        return s;
    }

    std::size_t n_qubits() const { return n_; }
    std::span<const amplitude> amplitudes() const { return amps_; }

    double norm() const {
        double acc = 0.0;
        for (const auto& a : amps_) acc += std::norm(a);
        return std::sqrt(acc);
    }

    void apply(const Gate& g) {
        check_qubit(g.q0);
        const std::uint64_t m0 = std::uint64_t{1} << g.q0;
        switch (g.kind) {
            case GateKind::h: {
                const double r = std::numbers::sqrt2 / 2.0;
                for (std::uint64_t i = 0; i < amps_.size(); ++i) {
                    if (i & m0) continue;
                    const amplitude a = amps_[i], b = amps_[i | m0];
                    amps_[i] = r * (a + b);
                    amps_[i | m0] = r * (a - b);
                }
                break;
            }
            case GateKind::x:
                for (std::uint64_t i = 0; i < amps_.size(); ++i) {
                    if (!(i & m0)) std::swap(amps_[i], amps_[i | m0]);
                }
                break;
            case GateKind::z:
                for (std::uint64_t i = 0; i < amps_.size(); ++i) {
                    if (i & m0) amps_[i] = -amps_[i];
                }
                break;
            case GateKind::ry: {
                // exp(-i theta Y / 2)
                const double c = std::cos(g.theta / 2.0), s = std::sin(g.theta / 2.0);
                for (std::uint64_t i = 0; i < amps_.size(); ++i) {
                    if (i & m0) continue;
                    const amplitude a = amps_[i], b = amps_[i | m0];
                    amps_[i] = c * a - s * b;
                    amps_[i | m0] = s * a + c * b;
                }
                break;
            }
            case GateKind::cnot: {
                check_qubit(g.q1);
                const std::uint64_t m1 = std::uint64_t{1} << g.q1;
                for (std::uint64_t i = 0; i < amps_.size(); ++i) {
                    if ((i & m0) && !(i & m1)) std::swap(amps_[i], amps_[i | m1]);
                }
                break;
            }
        }
    }

    void run(const Circuit& c) {
        if (c.n_qubits() != n_) throw DimensionError("circuit and state sizes differ");
        for (const auto& layer : c.layers()) {
            for (const auto& g : layer) apply(g);
        }
    }

    /// <psi|P|psi>; real because P is Hermitian.
    double expectation(const PauliString& p) const {
        if (p.n_qubits() != n_) throw DimensionError("Pauli and state sizes differ");
        std::uint64_t xm = 0, zm = 0;
        if (n_ > 0) {
            xm = p.x_words()[0];
            zm = p.z_words()[0];
        }
        // P = sign * i^{#Y} * X^x Z^z
        const int n_y = std::popcount(xm & zm);
        static constexpr amplitude i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const amplitude prefactor = static_cast<double>(p.sign()) * i_pow[n_y % 4];
        amplitude acc = 0.0;
        for (std::uint64_t j = 0; j < amps_.size(); ++j) {
            const double parity = (std::popcount(j & zm) & 1) ? -1.0 : 1.0;
            acc += std::conj(amps_[j ^ xm]) * amps_[j] * parity;
        }
        return (prefactor * acc).real();
    }

    amplitude inner(const DenseState& other) const {
        if (other.n_ != n_) throw DimensionError("state sizes differ");
        amplitude acc = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
        return acc;
    }

    /// Von Neumann entropy (nats) of the reduced state on `subset`.
    double entropy(std::span<const std::size_t> subset) const {
        std::uint64_t mask = 0;
        for (auto q : subset) {
            check_qubit(q);
            if (mask & (std::uint64_t{1} << q)) throw DimensionError("repeated qubit in subset");
            mask |= std::uint64_t{1} << q;
        }
        if (subset.empty() || subset.size() >= n_) throw DimensionError("entropy subset must be nonempty and proper");
        // Reduce on the smaller side; both sides share the same spectrum.
        std::vector<std::size_t> keep;
        for (std::size_t q = 0; q < n_; ++q) {
            const bool in_a = mask & (std::uint64_t{1} << q);
            if (in_a == (subset.size() * 2 <= n_)) keep.push_back(q);
        }
        const std::size_t dim_keep = std::size_t{1} << keep.size();
        const std::size_t dim_rest = std::size_t{1} << (n_ - keep.size());
        Eigen::MatrixXcd psi(dim_keep, dim_rest);
        std::vector<std::size_t> rest;
        for (std::size_t q = 0; q < n_; ++q) {
            if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
        }
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            std::size_t r = 0, c = 0;
            for (std::size_t b = 0; b < keep.size(); ++b) r |= ((i >> keep[b]) & 1u) << b;
            for (std::size_t b = 0; b < rest.size(); ++b) c |= ((i >> rest[b]) & 1u) << b;
            psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amps_[i];
        }
        const Eigen::MatrixXcd rho = psi * psi.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
        double s = 0.0;
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
            const double p = solver.eigenvalues()[k];
            if (p > 1e-14) s -= p * std::log(p);
        }
        return s;
    }

   private:
    explicit DenseState(std::size_t n) : n_(n) {
        if (n > max_dense_qubits) {
            throw SizeError("dense simulation is capped at " + std::to_string(max_dense_qubits) + " qubits, got " +
                            std::to_string(n));
        }
        amps_.assign(std::size_t{1} << n, amplitude{0.0, 0.0});
    }

    void check_qubit(std::size_t q) const {
        if (q >= n_) throw DimensionError("qubit " + std::to_string(q) + " out of range");
    }

    std::size_t n_;
    std::vector<amplitude> amps_;
};

/// |<a|b>|, insensitive to global phase.
inline double fidelity(const DenseState& a, const DenseState& b) { return std::abs(a.inner(b)); }

/// Prepared input followed by the circuit.
inline DenseState simulate_dense(const Circuit& c, std::span<const int> input) {
    DenseState s = DenseState::init_product(input);
    s.run(c);
    return s;
}

}  // namespace eqc

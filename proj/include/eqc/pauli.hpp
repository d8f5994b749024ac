#pragma once

// Signed n-qubit Pauli operators in symplectic form.
//
// A PauliString is sign * prod_q P_q where P_q is selected by the pair
// (x_q, z_q): (0,0) = I, (1,0) = X, (0,1) = Z, (1,1) = Y. The sign is +1 or
// -1 only. Products that would pick up a factor of +-i are rejected with a
// PhaseError instead of being tracked.

#include <bit>
#include <algorithm>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqc/errors.hpp"

namespace eqc {

namespace bits {

inline constexpr std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

inline bool get(std::span<const std::uint64_t> w, std::size_t i) {
    return (w[i >> 6] >> (i & 63)) & 1u;
}

inline void set(std::span<std::uint64_t> w, std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
        w[i >> 6] |= m;
    } else {
        w[i >> 6] &= ~m;
    }
}

// Exponent k (mod 4) of i^k picked up when multiplying the single-qubit
// Paulis encoded by (x1, z1) and (x2, z2), summed over all bit lanes.
inline int product_phase(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2, std::uint64_t z2) {
    const std::uint64_t plus = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
    const std::uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
    return std::popcount(plus) - std::popcount(minus);
}

}  // namespace bits

class PauliString {
   public:
    PauliString() = default;

    /// Identity on n qubits.
    explicit PauliString(std::size_t n_qubits)
        : n_(n_qubits), x_(bits::word_count(n_qubits), 0), z_(bits::word_count(n_qubits), 0) {}

    /// Single-qubit operator 'X', 'Y' or 'Z' on qubit q.
    static PauliString single(std::size_t n_qubits, std::size_t q, char op) {
        PauliString p(n_qubits);
        p.set(q, op);
        return p;
    }

    /// Product of one Pauli type over the listed qubits, e.g. Z on {0,1,2}.
    static PauliString uniform(std::size_t n_qubits, std::span<const std::size_t> qubits, char op) {
        PauliString p(n_qubits);
        for (auto q : qubits) {
            if (p.get(q) != 'I') throw DimensionError("repeated qubit in Pauli support");
            p.set(q, op);
        }
        return p;
    }

    static PauliString uniform(std::size_t n_qubits, std::initializer_list<std::size_t> qubits, char op) {
        return uniform(n_qubits, std::span<const std::size_t>(qubits.begin(), qubits.size()), op);
    }

    std::size_t n_qubits() const { return n_; }
    int sign() const { return negative_ ? -1 : 1; }
    void negate() { negative_ = !negative_; }
    void set_sign(int s) { negative_ = s < 0; }

    bool x(std::size_t q) const { return bits::get(x_, checked(q)); }
    bool z(std::size_t q) const { return bits::get(z_, checked(q)); }
    void set_x(std::size_t q, bool v) { bits::set(x_, checked(q), v); }
    void set_z(std::size_t q, bool v) { bits::set(z_, checked(q), v); }

    /// 'I', 'X', 'Y' or 'Z' on qubit q.
    char get(std::size_t q) const {
        static constexpr char table[4] = {'I', 'X', 'Z', 'Y'};
        return table[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
    }

    void set(std::size_t q, char op) {
        switch (op) {
            case 'I': set_x(q, false); set_z(q, false); break;
            case 'X': set_x(q, true); set_z(q, false); break;
            case 'Y': set_x(q, true); set_z(q, true); break;
            case 'Z': set_x(q, false); set_z(q, true); break;
            default: throw ParseError(std::string("unknown Pauli '") + op + "'");
        }
    }

    std::span<const std::uint64_t> x_words() const { return x_; }
    std::span<const std::uint64_t> z_words() const { return z_; }
    std::span<std::uint64_t> x_words() { return x_; }
    std::span<std::uint64_t> z_words() { return z_; }

    /// True when every qubit carries the identity (the sign is not inspected).
    bool is_identity() const {
        for (std::size_t w = 0; w < x_.size(); ++w) {
            if (x_[w] | z_[w]) return false;
        }
        return true;
    }

    std::size_t weight() const {
        std::size_t total = 0;
        for (std::size_t w = 0; w < x_.size(); ++w) total += std::popcount(x_[w] | z_[w]);
        return total;
    }

    /// Same operator content, ignoring sign.
    bool same_support_ops(const PauliString& o) const { return n_ == o.n_ && x_ == o.x_ && z_ == o.z_; }

    friend bool operator==(const PauliString& a, const PauliString& b) {
        return a.same_support_ops(b) && a.negative_ == b.negative_;
    }

    /// In-place right multiplication: *this = *this * rhs.
    PauliString& operator*=(const PauliString& rhs) {
        if (rhs.n_ != n_) throw DimensionError("Pauli size mismatch in multiply");
        int k = 0;
        for (std::size_t w = 0; w < x_.size(); ++w) {
            k += bits::product_phase(x_[w], z_[w], rhs.x_[w], rhs.z_[w]);
            x_[w] ^= rhs.x_[w];
            z_[w] ^= rhs.z_[w];
        }
        k = ((k % 4) + 4) % 4;
        if (k & 1) throw PhaseError("Pauli product has an imaginary phase");
        negative_ ^= rhs.negative_ ^ (k == 2);
        return *this;
    }

   private:
    std::size_t checked(std::size_t q) const {
        if (q >= n_) throw DimensionError("qubit index " + std::to_string(q) + " out of range");
        return q;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> x_;
    std::vector<std::uint64_t> z_;
    bool negative_ = false;
};

inline PauliString multiply(const PauliString& a, const PauliString& b) {
    PauliString out = a;
    out *= b;
    return out;
}

inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// Symplectic inner product test.
inline bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) throw DimensionError("Pauli size mismatch in commutes");
    auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
    unsigned parity = 0;
    for (std::size_t w = 0; w < ax.size(); ++w) {
        parity ^= std::popcount((ax[w] & bz[w]) ^ (az[w] & bx[w])) & 1u;
    }
    return parity == 0;
}

inline std::vector<std::size_t> support(const PauliString& a) {
    std::vector<std::size_t> out;
    auto xw = a.x_words(), zw = a.z_words();
    for (std::size_t w = 0; w < xw.size(); ++w) {
        std::uint64_t m = xw[w] | zw[w];
        while (m) {
            out.push_back(w * 64 + std::countr_zero(m));
            m &= m - 1;
        }
    }
    return out;
}

/// Text form with 1-based labels, e.g. "Z1 Z2 Z3" or "-X2 X3". Identity is "I".
inline std::string to_text(const PauliString& p) {
    std::ostringstream out;
    if (p.sign() < 0) out << '-';
    bool first = true;
    for (auto q : support(p)) {
        if (!first) out << ' ';
        out << p.get(q) << (q + 1);
        first = false;
    }
    if (first) out << 'I';
    return out.str();
}

/// Inverse of to_text. Accepts an optional leading sign and whitespace-separated
/// factors; a qubit may not repeat.
inline PauliString parse_pauli(std::string_view text, std::size_t n_qubits) {
    PauliString p(n_qubits);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        if (text[i] == '-') p.negate();
        ++i;
        skip_ws();
    }
    if (text.substr(i) == "I") return p;
    while (i < text.size()) {
        const char op = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i++])));
        if (op != 'X' && op != 'Y' && op != 'Z') throw ParseError("bad Pauli text: " + std::string(text));
        std::size_t label = 0;
        std::size_t digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            label = label * 10 + static_cast<std::size_t>(text[i++] - '0');
            ++digits;
        }
        if (digits == 0 || label == 0 || label > n_qubits) {
            throw ParseError("bad qubit label in Pauli text: " + std::string(text));
        }
        if (p.get(label - 1) != 'I') throw ParseError("repeated qubit in Pauli text: " + std::string(text));
        p.set(label - 1, op);
        skip_ws();
    }
    return p;
}

/// Rank over GF(2) of the symplectic vectors (signs ignored).
inline std::size_t gf2_rank(std::span<const PauliString> ops) {
    if (ops.empty()) return 0;
    const std::size_t n = ops.front().n_qubits();
    const std::size_t w = bits::word_count(n);
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(ops.size());
    for (const auto& p : ops) {
        if (p.n_qubits() != n) throw DimensionError("Pauli size mismatch in gf2_rank");
        std::vector<std::uint64_t> r(2 * w);
        std::copy(p.x_words().begin(), p.x_words().end(), r.begin());
        std::copy(p.z_words().begin(), p.z_words().end(), r.begin() + static_cast<std::ptrdiff_t>(w));
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
        const std::size_t cw = col < n ? col >> 6 : w + ((col - n) >> 6);
        const std::uint64_t cm = std::uint64_t{1} << ((col < n ? col : col - n) & 63);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][cw] & cm)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r][cw] & cm)) {
                for (std::size_t k = 0; k < 2 * w; ++k) rows[r][k] ^= rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace eqc

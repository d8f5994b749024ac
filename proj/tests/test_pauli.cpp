#include <gtest/gtest.h>

#include <complex>

#include "support/oracles.hpp"

namespace {

using namespace eqc;
using eqc::testing::pauli_matrix;
using eqc::testing::random_pauli;

// Phase c with A B = c C, read off a nonzero entry of C.
std::complex<double> relative_phase(const eqc::testing::Matrix& ab, const eqc::testing::Matrix& c) {
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
        for (Eigen::Index k = 0; k < c.cols(); ++k) {
            if (std::abs(c(r, k)) > 0.5) return ab(r, k) / c(r, k);
        }
    }
    return 0.0;
}

TEST(PauliOracle, ProductsMatchDenseMatricesUpToSixQubits) {
    SplitMix64 rng(99);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 60; ++trial) {
            const PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
            const eqc::testing::Matrix ab = pauli_matrix(a) * pauli_matrix(b);
            // Unsigned operator with the product's support, to read the phase.
            PauliString support_only(n);
            for (std::size_t q = 0; q < n; ++q) {
                support_only.set_x(q, a.x(q) != b.x(q));
                support_only.set_z(q, a.z(q) != b.z(q));
            }
            const auto phase = relative_phase(ab, pauli_matrix(support_only));
            if (std::abs(phase.imag()) > 0.5) {
                EXPECT_THROW(multiply(a, b), PhaseError);
            } else {
                const PauliString p = multiply(a, b);
                EXPECT_TRUE((pauli_matrix(p) - ab).norm() < 1e-12) << to_text(a) << " * " << to_text(b);
            }
        }
    }
}

TEST(PauliOracle, CommutationMatchesMatrices) {
    SplitMix64 rng(5);
    for (std::size_t n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 80; ++trial) {
            const PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
            const auto ma = pauli_matrix(a), mb = pauli_matrix(b);
            const bool dense_commute = (ma * mb - mb * ma).norm() < 1e-12;
            EXPECT_EQ(commutes(a, b), dense_commute);
            EXPECT_EQ(commutes(a, b), commutes(b, a));
        }
    }
}

TEST(PauliOracle, AssociativeOnPhaseFreeTriples) {
    SplitMix64 rng(17);
    int tested = 0;
    for (int trial = 0; trial < 3000 && tested < 300; ++trial) {
        const std::size_t n = 1 + rng.next() % 12;
        const PauliString a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
        try {
            const PauliString left = (a * b) * c;
            const PauliString right = a * (b * c);
            EXPECT_EQ(left, right);
            ++tested;
        } catch (const PhaseError&) {
        }
    }
    EXPECT_GE(tested, 100);
}

TEST(Pauli, SquareIsIdentity) {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        PauliString p = random_pauli(1 + rng.next() % 70, rng);
        const PauliString sq = p * p;
        EXPECT_TRUE(sq.is_identity());
        EXPECT_EQ(sq.sign(), 1);
    }
}

TEST(Pauli, ZTimesXOnOneQubitIsRejected) {
    const PauliString z = PauliString::single(3, 0, 'Z'), x = PauliString::single(3, 0, 'X');
    EXPECT_THROW(z * x, PhaseError);
    EXPECT_FALSE(commutes(z, x));
}

TEST(Pauli, TwoOverlappingTrestleZTermsMultiplyToSupportDifference) {
    const PauliString z1 = parse_pauli("Z1 Z2 Z3", 4), z2 = parse_pauli("Z3 Z4 Z1", 4);
    const PauliString p = z1 * z2;
    EXPECT_EQ(to_text(p), "Z2 Z4");
    EXPECT_EQ(p.sign(), 1);
}

TEST(Pauli, SignFromYProducts) {
    // X Y = iZ on each qubit; two such factors give -Z Z.
    const PauliString a = parse_pauli("X1 X2", 2), b = parse_pauli("Y1 Y2", 2);
    EXPECT_EQ(to_text(a * b), "-Z1 Z2");
    EXPECT_EQ(to_text(b * a), "-Z1 Z2");
    EXPECT_EQ(to_text(parse_pauli("X1 Y2", 2) * parse_pauli("Y1 X2", 2)), "Z1 Z2");
}

TEST(Pauli, MultiWordProductsMatchPerQubitRule) {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 130;
        const PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
        // i^k per qubit from the single-qubit table.
        int k = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const char pa = a.get(q), pb = b.get(q);
            if (pa == 'I' || pb == 'I' || pa == pb) continue;
            const bool cyclic = (pa == 'X' && pb == 'Y') || (pa == 'Y' && pb == 'Z') || (pa == 'Z' && pb == 'X');
            k += cyclic ? 1 : 3;
        }
        if (k % 2) {
            EXPECT_THROW(a * b, PhaseError);
            continue;
        }
        const int expected_sign = a.sign() * b.sign() * (k % 4 == 2 ? -1 : 1);
        EXPECT_EQ((a * b).sign(), expected_sign);
    }
}

TEST(Pauli, SupportQueries) {
    EXPECT_TRUE(support(PauliString(5)).empty());
    EXPECT_EQ(support(parse_pauli("X2 Z5", 6)), (std::vector<std::size_t>{1, 4}));
    EXPECT_EQ(PauliString(5).weight(), 0u);
    EXPECT_EQ(parse_pauli("X1 Y2 Z3", 3).weight(), 3u);
}

TEST(Pauli, TextRoundTrip) {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.next() % 20;
        const PauliString p = random_pauli(n, rng);
        EXPECT_EQ(parse_pauli(to_text(p), n), p);
    }
    EXPECT_EQ(to_text(PauliString(3)), "I");
    EXPECT_EQ(to_text(parse_pauli("-x2 x3", 4)), "-X2 X3");
}

TEST(Pauli, RejectsMalformedInput) {
    EXPECT_THROW(parse_pauli("Q1", 3), ParseError);
    EXPECT_THROW(parse_pauli("X0", 3), ParseError);
    EXPECT_THROW(parse_pauli("X4", 3), ParseError);
    EXPECT_THROW(parse_pauli("X1 Z1", 3), ParseError);
    EXPECT_THROW(PauliString::uniform(3, {0, 0}, 'Z'), DimensionError);
    EXPECT_THROW(PauliString(2) * PauliString(3), DimensionError);
    EXPECT_THROW(commutes(PauliString(2), PauliString(3)), DimensionError);
    EXPECT_THROW(PauliString(2).set(0, 'W'), ParseError);
}

TEST(Pauli, BinaryRank) {
    const std::vector<PauliString> ops{parse_pauli("Z1 Z2", 3), parse_pauli("Z2 Z3", 3), parse_pauli("Z1 Z3", 3),
                                       parse_pauli("X1 X2 X3", 3)};
    EXPECT_EQ(gf2_rank(ops), 3u);
    EXPECT_EQ(gf2_rank(std::vector<PauliString>{}), 0u);
}

}  // namespace

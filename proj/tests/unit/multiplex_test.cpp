#include <random>
#include <string>

#include <gtest/gtest.h>

#include "multicast/error.hpp"
#include "multicast/multiplex.hpp"
#include "oracles.hpp"

namespace multicast {
namespace {

using testing::decimal_digits;
using testing::random_int_matrix;

const IntMatrix kWorked(2, 2, {17, 23, 26, 31});

// Reference encoders written directly from the scheme definitions.
std::string reference_di(const IntMatrix& m, int b) {
    std::string out;
    for (std::size_t t = 0; t < m.rows(); ++t) {
        if (t > 0) out += ',';
        for (int p = 0; p < b; ++p) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                out += static_cast<char>('0' + decimal_digits(m(t, j), b)[static_cast<std::size_t>(p)]);
            }
        }
    }
    return out;
}

std::string padded(std::int64_t v, int b) {
    std::string s;
    for (int digit : decimal_digits(v, b)) s += static_cast<char>('0' + digit);
    return s;
}

std::string reference_vi(const IntMatrix& m, int b) {
    std::string out;
    for (std::size_t t = 0; t < m.rows(); ++t) {
        if (t > 0) out += ',';
        for (std::size_t j = 0; j < m.cols(); ++j) out += padded(m(t, j), b);
    }
    return out;
}

std::string reference_vc(const IntMatrix& m, int b) {
    std::string out;
    for (std::size_t t = 0; t < m.rows(); ++t) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!out.empty()) out += ',';
            out += padded(m(t, j), b);
        }
    }
    return out;
}

TEST(Mux, GoldenStrings) {
    EXPECT_EQ(mux_di(kWorked, {MuxScheme::DI, 2, 2}), "1273,2361");
    EXPECT_EQ(mux_vi(kWorked, {MuxScheme::VI, 2, 2}), "1723,2631");
    EXPECT_EQ(mux_vc(kWorked, {MuxScheme::VC, 2, 2}), "17,23,26,31");
    EXPECT_EQ(mux(kWorked, {MuxScheme::VC, 2, 2}), "17,23,26,31");
}

TEST(Mux, ZeroPadsToWidth) {
    const IntMatrix m(1, 2, {7, 42});
    EXPECT_EQ(mux_vi(m, {MuxScheme::VI, 2, 3}), "007042");
    EXPECT_EQ(mux_di(m, {MuxScheme::DI, 2, 3}), "000472");
    EXPECT_EQ(mux_vc(m, {MuxScheme::VC, 2, 3}), "007,042");
}

TEST(Mux, SchemesCoincideForOneDimensionalOrSingleDigit) {
    std::mt19937_64 rng(3);
    for (int b = 1; b <= 5; ++b) {
        const auto m = random_int_matrix(rng, 9, 1, b);
        const auto di = mux_di(m, {MuxScheme::DI, 1, b});
        EXPECT_EQ(di, mux_vi(m, {MuxScheme::VI, 1, b}));
        EXPECT_EQ(di, mux_vc(m, {MuxScheme::VC, 1, b}));
    }
    for (std::size_t d = 1; d <= 5; ++d) {
        const auto m = random_int_matrix(rng, 7, d, 1);
        EXPECT_EQ(mux_di(m, {MuxScheme::DI, d, 1}), mux_vi(m, {MuxScheme::VI, d, 1}));
    }
}

TEST(Mux, MatchesReferenceEncoders) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const std::size_t d = 1 + rng() % 6;
        const int b = 1 + static_cast<int>(rng() % 5);
        const auto m = random_int_matrix(rng, n, d, b);
        ASSERT_EQ(mux_di(m, {MuxScheme::DI, d, b}), reference_di(m, b));
        ASSERT_EQ(mux_vi(m, {MuxScheme::VI, d, b}), reference_vi(m, b));
        ASSERT_EQ(mux_vc(m, {MuxScheme::VC, d, b}), reference_vc(m, b));
    }
}

TEST(Mux, LengthLaws) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        const std::size_t d = 1 + rng() % 8;
        const int b = 1 + static_cast<int>(rng() % 6);
        const auto m = random_int_matrix(rng, n, d, b);
        const std::size_t body = n * d * static_cast<std::size_t>(b);
        EXPECT_EQ(mux_di(m, {MuxScheme::DI, d, b}).size(), body + (n - 1));
        EXPECT_EQ(mux_vi(m, {MuxScheme::VI, d, b}).size(), body + (n - 1));
        EXPECT_EQ(mux_vc(m, {MuxScheme::VC, d, b}).size(), body + (n * d - 1));
        for (auto scheme : {MuxScheme::DI, MuxScheme::VI, MuxScheme::VC}) {
            const MuxLayout layout{scheme, d, b};
            EXPECT_EQ(layout.encoded_length(n), mux(m, layout).size());
        }
    }
}

TEST(Mux, DigitOverflow) {
    const IntMatrix m(1, 1, {100});
    for (auto scheme : {MuxScheme::DI, MuxScheme::VI, MuxScheme::VC}) {
        try {
            (void)mux(m, {scheme, 1, 2});
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::DigitOverflow);
        }
    }
    const IntMatrix negative(1, 1, {-1});
    EXPECT_THROW((void)mux(negative, {MuxScheme::VI, 1, 2}), Error);
}

TEST(Demux, GoldenRoundTrip) {
    for (auto [scheme, text] : {std::pair{MuxScheme::DI, "1273,2361"}, std::pair{MuxScheme::VI, "1723,2631"},
                                std::pair{MuxScheme::VC, "17,23,26,31"}}) {
        const auto r = demux(text, {scheme, 2, 2});
        EXPECT_EQ(r.complete_timestamps, 2u);
        EXPECT_EQ(r.values, kWorked);
    }
}

TEST(Demux, PartialTrailingTimestampIsDropped) {
    const auto r = demux("1723,26", {MuxScheme::VI, 2, 2});
    EXPECT_EQ(r.complete_timestamps, 1u);
    EXPECT_EQ(r.values, IntMatrix(1, 2, {17, 23}));

    const auto vc = demux("17,23,26", {MuxScheme::VC, 2, 2});
    EXPECT_EQ(vc.complete_timestamps, 1u);
    EXPECT_EQ(vc.values, IntMatrix(1, 2, {17, 23}));
}

TEST(Demux, StopsAtFirstMalformedChunk) {
    const auto r = demux("1723,2x31,4455", {MuxScheme::VI, 2, 2});
    EXPECT_EQ(r.complete_timestamps, 1u);
    const auto trailing = demux("1723,2631,", {MuxScheme::VI, 2, 2});
    EXPECT_EQ(trailing.complete_timestamps, 2u);
}

TEST(Demux, NothingParsable) {
    for (const char* text : {"xyz", "", "1", ",1723"}) {
        try {
            (void)demux(text, {MuxScheme::VI, 2, 2});
            FAIL() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::NoCompleteTimestamp) << text;
        }
    }
}

TEST(MuxProperty, ExhaustiveSmallRoundTrip) {
    std::mt19937_64 rng(17);
    for (auto scheme : {MuxScheme::DI, MuxScheme::VI, MuxScheme::VC}) {
        for (std::size_t d = 1; d <= 4; ++d) {
            for (int b = 1; b <= 3; ++b) {
                for (std::size_t n = 1; n <= 8; ++n) {
                    const MuxLayout layout{scheme, d, b};
                    const auto m = random_int_matrix(rng, n, d, b);
                    const auto r = demux(mux(m, layout), layout);
                    ASSERT_EQ(r.complete_timestamps, n);
                    ASSERT_EQ(r.values, m);
                }
            }
        }
    }
}

TEST(MuxProperty, RandomLargeRoundTrip) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto scheme = static_cast<MuxScheme>(trial % 3);
        const std::size_t d = 1 + rng() % 8;
        const int b = 1 + static_cast<int>(rng() % 6);
        const std::size_t n = 1 + rng() % 64;
        const MuxLayout layout{scheme, d, b};
        const auto m = random_int_matrix(rng, n, d, b);
        const auto r = demux(mux(m, layout), layout);
        ASSERT_EQ(r.values, m);
    }
}

TEST(TokenVocabulary, SaxAlphabets) {
    const auto alpha = TokenVocabulary::sax(5, AlphabetKind::Alphabetical);
    EXPECT_EQ(alpha.symbols(), "abcde");
    EXPECT_EQ(alpha.index_of('c'), 2);
    EXPECT_EQ(alpha.index_of('f'), -1);
    EXPECT_TRUE(alpha.allows(','));
    const auto digit = TokenVocabulary::sax(4, AlphabetKind::Digital);
    EXPECT_EQ(digit.symbols(), "0123");
    try {
        (void)TokenVocabulary::sax(20, AlphabetKind::Digital);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DigitalAlphabetOverflow);
    }

    const IntMatrix symbols(2, 2, {0, 4, 2, 1});
    const MuxLayout layout{MuxScheme::VI, 2, 1};
    const auto text = mux(symbols, layout, alpha);
    EXPECT_EQ(text, "ae,cb");
    EXPECT_EQ(demux(text, layout, alpha).values, symbols);
}

}  // namespace
}  // namespace multicast

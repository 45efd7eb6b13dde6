#include <doctest.h>

#include <array>
#include <string>
#include <vector>

#include "refmatch/rng.hpp"
#include "refmatch/simd/edit_distance.hpp"
#include "refmatch/strsim.hpp"
#include "refmatch/utf8.hpp"

using namespace refmatch;
using namespace refmatch::simd;

namespace {

std::string random_word(Rng& rng, std::size_t max_len, const std::string& alphabet) {
    std::string word;
    const std::size_t len = rng.index(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) word.push_back(alphabet[rng.index(alphabet.size())]);
    return word;
}

std::uint8_t full_dp_bounded(const std::string& a, const std::string& b, int k) {
    // independent reference: unbanded codepoint DP, clamped
    const std::size_t d = strsim::levenshtein(utf8::decode(a), utf8::decode(b));
    return d <= static_cast<std::size_t>(k) ? static_cast<std::uint8_t>(d) : kNoMatch;
}

}  // namespace

TEST_CASE("bounded_edit_distance equals clamped full DP") {
    Rng rng(911);
    const std::string alphabet = "abcde";
    for (int trial = 0; trial < 4000; ++trial) {
        const std::string a = random_word(rng, 12, alphabet);
        const std::string b = random_word(rng, 12, alphabet);
        for (int k = 0; k <= 3; ++k) {
            CHECK(bounded_edit_distance(a, b, k) == full_dp_bounded(a, b, k));
        }
    }
}

TEST_CASE("packed scan equals naive dictionary filter") {
    Rng rng(912);
    const std::string alphabet = "abcdef";
    for (int round = 0; round < 20; ++round) {
        std::vector<std::u32string> terms;
        const std::size_t term_count = 1 + rng.index(150);
        for (std::size_t i = 0; i < term_count; ++i) {
            terms.push_back(utf8::decode(random_word(rng, 14, alphabet)));
        }
        const PackedTerms packed(terms);
        REQUIRE(packed.size() == terms.size());
        for (int q = 0; q < 15; ++q) {
            const std::u32string query = utf8::decode(random_word(rng, 14, alphabet));
            for (int k = 1; k <= 2; ++k) {
                std::vector<std::uint32_t> expected;
                for (std::uint32_t t = 0; t < terms.size(); ++t) {
                    if (strsim::levenshtein(query, terms[t]) <= static_cast<std::size_t>(k)) {
                        expected.push_back(t);
                    }
                }
                CHECK(packed.scan(query, k) == expected);
            }
        }
    }
}

TEST_CASE("umlaut terms take the latin-1 kernel path and match codepoint-wise") {
    const std::vector<std::u32string> terms = {
        utf8::decode("müller"), utf8::decode("muller"), utf8::decode("mueller"),
        utf8::decode("mülller"), utf8::decode("schmidt"),
    };
    const PackedTerms packed(terms);
    const auto matches = packed.scan(utf8::decode("müller"), 1);
    // müller (0 edits), muller (1), mülller (1); mueller is 2 edits away
    CHECK(matches == std::vector<std::uint32_t>{0, 1, 3});
}

TEST_CASE("terms outside latin-1 fall back to the codepoint path") {
    const std::vector<std::u32string> terms = {
        U"социо",  // non-latin codepoints
        utf8::decode("socio"),
    };
    const PackedTerms packed(terms);
    CHECK(packed.scan(U"социо", 1) == std::vector<std::uint32_t>{0});
    CHECK(packed.scan(utf8::decode("socio"), 0) == std::vector<std::uint32_t>{1});
}

#if defined(__x86_64__) || defined(__i386__)
TEST_CASE("scalar and AVX2 batch kernels are bit-identical") {
    if (!cpu_supports(Lane::Avx2)) {
        MESSAGE("AVX2 not available on this CPU; skipping lane comparison");
        return;
    }
    Rng rng(913);
    const std::string alphabet = "abcdefgh";
    for (int round = 0; round < 40; ++round) {
        // build one packed block by hand: up to 32 candidates, padded rows
        const int count = 1 + static_cast<int>(rng.index(32));
        std::vector<std::string> cands;
        std::size_t rows = 0;
        for (int i = 0; i < count; ++i) {
            cands.push_back(random_word(rng, 14, alphabet));
            rows = std::max(rows, cands.back().size());
        }
        std::vector<std::uint8_t> chars(rows * kLanes, 0x00);
        std::array<std::uint8_t, kLanes> lens{};
        for (int lane = 0; lane < count; ++lane) {
            lens[static_cast<std::size_t>(lane)] =
                static_cast<std::uint8_t>(cands[static_cast<std::size_t>(lane)].size());
            for (std::size_t r = 0; r < cands[static_cast<std::size_t>(lane)].size(); ++r) {
                chars[r * kLanes + static_cast<std::size_t>(lane)] =
                    static_cast<std::uint8_t>(cands[static_cast<std::size_t>(lane)][r]);
            }
        }
        const std::string query = random_word(rng, 14, alphabet);
        for (int k = 1; k <= 3; ++k) {
            std::array<std::uint8_t, kLanes> out_scalar{}, out_avx2{};
            detail::batch_banded_scalar(reinterpret_cast<const std::uint8_t*>(query.data()),
                                        query.size(), chars.data(), rows, lens.data(), count, k,
                                        out_scalar.data());
            detail::batch_banded_avx2(reinterpret_cast<const std::uint8_t*>(query.data()),
                                      query.size(), chars.data(), rows, lens.data(), count, k,
                                      out_avx2.data());
            for (int lane = 0; lane < count; ++lane) {
                CHECK(out_scalar[static_cast<std::size_t>(lane)] ==
                      out_avx2[static_cast<std::size_t>(lane)]);
            }
        }
    }
}

TEST_CASE("full scans agree across lanes") {
    if (!cpu_supports(Lane::Avx2)) return;
    Rng rng(914);
    const std::string alphabet = "abcd";
    std::vector<std::u32string> terms;
    for (int i = 0; i < 500; ++i) terms.push_back(utf8::decode(random_word(rng, 10, alphabet)));
    const PackedTerms packed(terms);

    const Lane before = active_lane();
    for (int q = 0; q < 50; ++q) {
        const std::u32string query = utf8::decode(random_word(rng, 10, alphabet));
        REQUIRE(set_lane(Lane::Scalar));
        const auto scalar_result = packed.scan(query, 2);
        REQUIRE(set_lane(Lane::Avx2));
        const auto avx2_result = packed.scan(query, 2);
        CHECK(scalar_result == avx2_result);
    }
    set_lane(before);
}
#endif

TEST_CASE("empty query matches short terms only") {
    const std::vector<std::u32string> terms = {U"", U"a", U"ab", U"abc"};
    const PackedTerms packed(terms);
    CHECK(packed.scan(U"", 2) == std::vector<std::uint32_t>{0, 1, 2});
}

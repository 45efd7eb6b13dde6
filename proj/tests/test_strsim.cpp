#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "refmatch/rng.hpp"
#include "refmatch/strsim.hpp"
#include "refmatch/utf8.hpp"
#include "support/oracle_strsim.hpp"

using namespace refmatch;
using namespace refmatch::strsim;

TEST_CASE("levenshtein hand values") {
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(levenshtein("abc", "abc") == 0);
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("abc", "") == 3);
    CHECK(levenshtein("Müller", "Muller") == 1);  // codepoint level, not bytes
}

TEST_CASE("levenshtein similarity") {
    CHECK(levenshtein_similarity("kitten", "sitting") == doctest::Approx(1.0 - 3.0 / 7.0));
    CHECK(levenshtein_similarity("same", "same") == 1.0);
    CHECK(levenshtein_similarity("", "") == 1.0);
    CHECK(levenshtein_similarity("a", "b") == 0.0);
}

TEST_CASE("token level levenshtein similarity") {
    CHECK(token_levenshtein_similarity({"data", "mining"}, {"data", "mining"}) == 1.0);
    CHECK(token_levenshtein_similarity({"a", "b", "c"}, {"a", "c"}) ==
          doctest::Approx(1.0 - 1.0 / 3.0));
    CHECK(token_levenshtein_similarity({}, {}) == 1.0);
}

TEST_CASE("jaccard") {
    const std::set<std::string> a = {"x", "y"};
    const std::set<std::string> b = {"x", "y", "u", "v"};
    CHECK(jaccard(a, b) == 0.5);
    CHECK(jaccard(a, a) == 1.0);
    CHECK(jaccard({"p"}, {"q"}) == 0.0);
    CHECK(jaccard({}, {}) == 1.0);
}

TEST_CASE("weighted jaccard matches the worked example") {
    // intersection weights 0.8 + 0.9 over union of size 4
    WeightedSet ws;
    ws.items = {{"x", 0.8}, {"y", 0.9}};
    CHECK(weighted_jaccard(ws, {"x", "y", "u", "v"}) == doctest::Approx(0.425));

    WeightedSet unit;
    unit.items = {{"x", 1.0}, {"y", 1.0}};
    CHECK(weighted_jaccard(unit, {"x", "y", "u", "v"}) == jaccard({"x", "y"}, {"x", "y", "u", "v"}));

    WeightedSet zero;
    zero.items = {{"x", 0.0}};
    CHECK(weighted_jaccard(zero, {"x"}) == 0.0);
    CHECK(weighted_jaccard({}, {}) == 1.0);
}

TEST_CASE("weighted jaccard never exceeds unweighted") {
    Rng rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        WeightedSet ws;
        std::set<std::string> keys, other;
        const std::size_t n = rng.index(6), m = rng.index(6);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string key(1, static_cast<char>('a' + rng.index(8)));
            ws.items[key] = rng.uniform();
            keys.insert(key);
        }
        for (std::size_t i = 0; i < m; ++i) {
            other.insert(std::string(1, static_cast<char>('a' + rng.index(8))));
        }
        CHECK(weighted_jaccard(ws, other) <= jaccard(keys, other) + 1e-12);
    }
}

TEST_CASE("longest common substring") {
    // oracle-confirmed value for the documented tricky pair: "on matching"
    const std::size_t expected =
        oracle::lcs_enumerate(utf8::decode("citation matching"), utf8::decode("on matching refs"));
    CHECK(longest_common_substring("citation matching", "on matching refs") == expected);
    CHECK(expected == 11);
    CHECK(longest_common_substring("same", "same") == 4);
    CHECK(longest_common_substring("abc", "xyz") == 0);
    CHECK(longest_common_substring("ABCdef", "abcDEF") == 6);  // case-folded
}

TEST_CASE("bigrams") {
    using P = std::pair<std::string, std::string>;
    CHECK(bigrams({"a", "b", "c"}) == std::vector<P>{{"a", "b"}, {"b", "c"}});
    CHECK(bigrams({"a"}).empty());
    CHECK(bigrams({}).empty());
    for (std::size_t n = 0; n < 8; ++n) {
        std::vector<std::string> tokens(n, "t");
        CHECK(bigrams(tokens).size() == (n < 2 ? 0 : n - 1));
    }
}

TEST_CASE("levenshtein metric axioms") {
    Rng rng(13);
    const auto random_string = [&] {
        std::string s;
        const std::size_t len = rng.index(9);
        for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + rng.index(4)));
        return s;
    };
    for (int trial = 0; trial < 800; ++trial) {
        const std::string a = random_string(), b = random_string(), c = random_string();
        const std::size_t ab = levenshtein(a, b);
        CHECK(levenshtein(a, a) == 0);
        CHECK((ab == 0) == (a == b));
        CHECK(ab == levenshtein(b, a));
        CHECK(levenshtein(a, c) <= ab + levenshtein(b, c));
    }
}

TEST_CASE("levenshtein and lcs agree with brute force exhaustively") {
    const auto strings = oracle::all_strings(U"abc", 5);
    for (const std::u32string& a : strings) {
        for (const std::u32string& b : strings) {
            CHECK(levenshtein(a, b) == oracle::lev_recursive(a, b));
        }
    }
    // lcs oracle is cheaper to stress on a sparser sample
    for (std::size_t i = 0; i < strings.size(); i += 3) {
        for (std::size_t j = 0; j < strings.size(); j += 5) {
            CHECK(longest_common_substring(utf8::encode(strings[i]), utf8::encode(strings[j])) ==
                  oracle::lcs_enumerate(strings[i], strings[j]));
        }
    }
}

TEST_CASE("similarity outputs stay in [0,1]") {
    Rng rng(47);
    const auto random_string = [&] {
        std::string s;
        const std::size_t len = rng.index(12);
        for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + rng.index(26)));
        return s;
    };
    for (int trial = 0; trial < 1500; ++trial) {
        const std::string a = random_string(), b = random_string();
        const double sim = levenshtein_similarity(a, b);
        CHECK(sim >= 0.0);
        CHECK(sim <= 1.0);
    }
}

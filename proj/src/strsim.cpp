#include "refmatch/strsim.hpp"

#include <algorithm>

#include "refmatch/utf8.hpp"

namespace refmatch::strsim {

namespace {

// Two-row DP over arbitrary symbol sequences.
template <typename Seq>
std::size_t edit_distance(const Seq& a, const Seq& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0) return m;
    if (m == 0) return n;
    std::vector<std::size_t> prev(m + 1), curr(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            curr[j] = std::min({sub, prev[j] + 1, curr[j - 1] + 1});
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

char32_t fold_case(char32_t c) {
    if (c >= 'A' && c <= 'Z') return c + 32;
    if (c == 0xC4 || c == 0xD6 || c == 0xDC) return c + 32;  // Ä Ö Ü
    return c;
}

}  // namespace

std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
    return edit_distance(a, b);
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
    return edit_distance(utf8::decode(a), utf8::decode(b));
}

double levenshtein_similarity(const std::string& a, const std::string& b) {
    const std::u32string ua = utf8::decode(a), ub = utf8::decode(b);
    const std::size_t longest = std::max(ua.size(), ub.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(edit_distance(ua, ub)) / static_cast<double>(longest);
}

double token_levenshtein_similarity(const std::vector<std::string>& a_tokens,
                                    const std::vector<std::string>& b_tokens) {
    const std::size_t longest = std::max(a_tokens.size(), b_tokens.size());
    if (longest == 0) return 1.0;
    return 1.0 -
           static_cast<double>(edit_distance(a_tokens, b_tokens)) / static_cast<double>(longest);
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t intersection = 0;
    for (const std::string& item : a) intersection += b.count(item);
    const std::size_t unioned = a.size() + b.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(unioned);
}

double weighted_jaccard(const WeightedSet& a, const std::set<std::string>& b) {
    if (a.items.empty() && b.empty()) return 1.0;
    double weighted_intersection = 0.0;
    std::size_t in_both = 0;
    for (const auto& [key, weight] : a.items) {
        if (b.count(key)) {
            weighted_intersection += weight;
            ++in_both;
        }
    }
    const std::size_t unioned = a.items.size() + b.size() - in_both;
    return weighted_intersection / static_cast<double>(unioned);
}

std::size_t longest_common_substring(const std::string& a, const std::string& b) {
    std::u32string ua = utf8::decode(a), ub = utf8::decode(b);
    for (char32_t& c : ua) c = fold_case(c);
    for (char32_t& c : ub) c = fold_case(c);
    if (ua.empty() || ub.empty()) return 0;
    // DP on suffix-match lengths, two rows.
    std::vector<std::size_t> prev(ub.size() + 1, 0), curr(ub.size() + 1, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= ua.size(); ++i) {
        for (std::size_t j = 1; j <= ub.size(); ++j) {
            if (ua[i - 1] == ub[j - 1]) {
                curr[j] = prev[j - 1] + 1;
                best = std::max(best, curr[j]);
            } else {
                curr[j] = 0;
            }
        }
        std::swap(prev, curr);
    }
    return best;
}

std::vector<std::pair<std::string, std::string>> bigrams(const std::vector<std::string>& tokens) {
    std::vector<std::pair<std::string, std::string>> result;
    if (tokens.size() < 2) return result;
    result.reserve(tokens.size() - 1);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        result.emplace_back(tokens[i], tokens[i + 1]);
    }
    return result;
}

}  // namespace refmatch::strsim

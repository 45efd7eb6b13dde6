#pragma once

// Brute-force reference implementations for the string kernel tests. These are
// deliberately naive and share no code with the library implementations.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace oracle {

// Edit distance by plain recursion with memoization over u32 symbols.
inline std::size_t lev_recursive(const std::u32string& a, const std::u32string& b) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
    const std::function<std::size_t(std::size_t, std::size_t)> go =
        [&](std::size_t i, std::size_t j) -> std::size_t {
        if (i == a.size()) return b.size() - j;
        if (j == b.size()) return a.size() - i;
        const auto key = std::make_pair(i, j);
        const auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::size_t best = go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
        best = std::min(best, go(i + 1, j) + 1);
        best = std::min(best, go(i, j + 1) + 1);
        memo[key] = best;
        return best;
    };
    return go(0, 0);
}

// Longest common substring by enumerating every substring of the shorter
// string and testing containment in the longer one.
inline std::size_t lcs_enumerate(std::u32string a, std::u32string b) {
    if (a.size() > b.size()) std::swap(a, b);
    for (std::size_t len = a.size(); len > 0; --len) {
        for (std::size_t start = 0; start + len <= a.size(); ++start) {
            if (b.find(a.substr(start, len)) != std::u32string::npos) return len;
        }
    }
    return 0;
}

// Every string over the alphabet with length in [0, max_len], shortest first.
inline std::vector<std::u32string> all_strings(const std::u32string& alphabet,
                                               std::size_t max_len) {
    std::vector<std::u32string> result = {U""};
    std::vector<std::u32string> frontier = {U""};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::u32string> next;
        for (const std::u32string& prefix : frontier) {
            for (const char32_t c : alphabet) {
                next.push_back(prefix + c);
                result.push_back(next.back());
            }
        }
        frontier = std::move(next);
    }
    return result;
}

}  // namespace oracle

#include <algorithm>
#include <cstring>
#include <vector>

#include "refmatch/simd/edit_distance.hpp"

namespace refmatch::simd {

namespace {

inline std::uint8_t sat_add(std::uint8_t a, std::uint8_t b) {
    const unsigned s = static_cast<unsigned>(a) + b;
    return s > 0xFF ? 0xFF : static_cast<std::uint8_t>(s);
}

constexpr unsigned kInf = 0x3FFF;

// Banded DP over 2k+1 diagonals; returns the exact distance when <= k, any
// value > k otherwise. Callers clamp to kNoMatch.
template <typename Sym>
unsigned banded_distance(const Sym* a, std::size_t n, const Sym* b, std::size_t m, int k) {
    const long long diff = static_cast<long long>(n) - static_cast<long long>(m);
    if (diff > k || -diff > k) return kInf;
    const std::size_t band = 2 * static_cast<std::size_t>(k) + 1;
    unsigned prev[2 * kMaxBandEdits + 1], curr[2 * kMaxBandEdits + 1];
    for (std::size_t bIdx = 0; bIdx < band; ++bIdx) {
        const int d = static_cast<int>(bIdx) - k;
        prev[bIdx] = d >= 0 ? static_cast<unsigned>(d) : kInf;
    }
    for (std::size_t j = 1; j <= m; ++j) {
        unsigned band_min = kInf;
        for (std::size_t bIdx = 0; bIdx < band; ++bIdx) {
            const int d = static_cast<int>(bIdx) - k;
            const long long i = static_cast<long long>(j) + d;
            if (i < 0 || i > static_cast<long long>(n)) {
                curr[bIdx] = kInf;
            } else if (i == 0) {
                curr[bIdx] = static_cast<unsigned>(j);  // first row: pure insertions
            } else {
                const unsigned cost = a[static_cast<std::size_t>(i - 1)] == b[j - 1] ? 0 : 1;
                unsigned best = prev[bIdx] + cost;
                if (bIdx + 1 < band) best = std::min(best, prev[bIdx + 1] + 1);
                if (bIdx > 0) best = std::min(best, curr[bIdx - 1] + 1);
                curr[bIdx] = std::min(best, kInf);
            }
            band_min = std::min(band_min, curr[bIdx]);
        }
        std::memcpy(prev, curr, sizeof(unsigned) * band);
        if (band_min > static_cast<unsigned>(k)) return kInf;
    }
    return prev[static_cast<std::size_t>(diff + k)];
}

}  // namespace

namespace detail {

// Reference semantics for the batch kernel. Mirrors the vector lane exactly:
// banded DP in diagonal coordinates with saturating uint8 arithmetic, padded
// rows read as 0x00 (which never equals a query byte; callers guarantee
// NUL-free input).
void batch_banded_scalar(const std::uint8_t* query, std::size_t query_len,
                         const std::uint8_t* chars, std::size_t rows,
                         const std::uint8_t* lens, int count, int max_edits, std::uint8_t* out) {
    const int k = max_edits;
    const int band = 2 * k + 1;
    for (int lane = 0; lane < count; ++lane) {
        const int len = lens[lane];
        const int diff = len - static_cast<int>(query_len);
        if (diff < -k || diff > k) {
            out[lane] = kNoMatch;
            continue;
        }
        std::uint8_t v[2 * kMaxBandEdits + 1];
        for (int b = 0; b < band; ++b) {
            const int d = b - k;
            v[b] = d >= 0 ? static_cast<std::uint8_t>(d) : 0xFF;
        }
        for (std::size_t j = 1; j <= query_len; ++j) {
            const std::uint8_t q = query[j - 1];
            std::uint8_t nv[2 * kMaxBandEdits + 1];
            std::uint8_t band_min = 0xFF;
            for (int b = 0; b < band; ++b) {
                const int d = b - k;
                const long long i = static_cast<long long>(j) + d;  // candidate row, 1-based
                if (i < 0 || i > static_cast<long long>(rows)) {
                    nv[b] = 0xFF;
                } else if (i == 0) {
                    nv[b] = static_cast<std::uint8_t>(j);  // first row: pure insertions
                } else {
                    const std::uint8_t c = chars[(i - 1) * kLanes + lane];
                    std::uint8_t best = sat_add(v[b], q == c ? 0 : 1);
                    if (b + 1 < band) best = std::min(best, sat_add(v[b + 1], 1));
                    if (b > 0) best = std::min(best, sat_add(nv[b - 1], 1));
                    nv[b] = best;
                }
                band_min = std::min(band_min, nv[b]);
            }
            std::memcpy(v, nv, sizeof(v));
            if (band_min > k) break;  // column minima are non-decreasing
        }
        const std::uint8_t result = v[diff + k];
        out[lane] = result <= k ? result : kNoMatch;
    }
}

}  // namespace detail

std::uint8_t bounded_edit_distance(std::string_view a, std::string_view b, int max_edits) {
    if (max_edits < 0) return kNoMatch;
    const int k = std::min(max_edits, kMaxBandEdits);
    const unsigned result = banded_distance(
        reinterpret_cast<const unsigned char*>(a.data()), a.size(),
        reinterpret_cast<const unsigned char*>(b.data()), b.size(), k);
    return result <= static_cast<unsigned>(k) ? static_cast<std::uint8_t>(result) : kNoMatch;
}

bool within_edits(const std::u32string& a, const std::u32string& b, int max_edits) {
    if (max_edits < 0) return false;
    const int k = std::min(max_edits, kMaxBandEdits);
    return banded_distance(a.data(), a.size(), b.data(), b.size(), k) <=
           static_cast<unsigned>(k);
}

}  // namespace refmatch::simd

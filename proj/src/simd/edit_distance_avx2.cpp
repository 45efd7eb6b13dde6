#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cstring>

#include "refmatch/simd/edit_distance.hpp"

namespace refmatch::simd::detail {

namespace {

// 0x00 where value > k, 0xFF where <= k (unsigned compare via saturating sub).
inline __m256i le_mask(__m256i values, __m256i k_vec) {
    return _mm256_cmpeq_epi8(_mm256_subs_epu8(values, k_vec), _mm256_setzero_si256());
}

}  // namespace

// 32-lane version of batch_banded_scalar. One __m256i register per band
// diagonal, all arithmetic saturating epi8, so results are bit-identical to
// the scalar reference.
void batch_banded_avx2(const std::uint8_t* query, std::size_t query_len,
                       const std::uint8_t* chars, std::size_t rows,
                       const std::uint8_t* lens, int count, int max_edits, std::uint8_t* out) {
    const int k = max_edits;
    const int band = 2 * k + 1;
    const __m256i ones = _mm256_set1_epi8(1);
    const __m256i inf = _mm256_set1_epi8(static_cast<char>(0xFF));
    const __m256i k_vec = _mm256_set1_epi8(static_cast<char>(k));

    __m256i v[2 * kMaxBandEdits + 1];
    for (int b = 0; b < band; ++b) {
        const int d = b - k;
        v[b] = d >= 0 ? _mm256_set1_epi8(static_cast<char>(d)) : inf;
    }

    for (std::size_t j = 1; j <= query_len; ++j) {
        const __m256i q = _mm256_set1_epi8(static_cast<char>(query[j - 1]));
        __m256i nv[2 * kMaxBandEdits + 1];
        __m256i band_min = inf;
        for (int b = 0; b < band; ++b) {
            const int d = b - k;
            const long long i = static_cast<long long>(j) + d;
            if (i < 0 || i > static_cast<long long>(rows)) {
                nv[b] = inf;
            } else if (i == 0) {
                nv[b] = _mm256_set1_epi8(static_cast<char>(j));  // first row
            } else {
                const __m256i c = _mm256_loadu_si256(
                    reinterpret_cast<const __m256i*>(chars + (i - 1) * kLanes));
                // cost = 0 where equal (cmpeq gives -1), else 1
                const __m256i cost = _mm256_add_epi8(_mm256_cmpeq_epi8(q, c), ones);
                __m256i best = _mm256_adds_epu8(v[b], cost);
                if (b + 1 < band) {
                    best = _mm256_min_epu8(best, _mm256_adds_epu8(v[b + 1], ones));
                }
                if (b > 0) {
                    best = _mm256_min_epu8(best, _mm256_adds_epu8(nv[b - 1], ones));
                }
                nv[b] = best;
            }
            band_min = _mm256_min_epu8(band_min, nv[b]);
        }
        std::memcpy(v, nv, sizeof(__m256i) * band);
        // All lanes past the cutoff? Column minima only grow, so stop.
        if (_mm256_movemask_epi8(le_mask(band_min, k_vec)) == 0) {
            for (int b = 0; b < band; ++b) v[b] = inf;
            break;
        }
    }

    const __m256i len_vec =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lens));
    __m256i result = inf;
    for (int b = 0; b < band; ++b) {
        const long long target_len = static_cast<long long>(query_len) + (b - k);
        if (target_len < 0 || target_len > 0xFF) continue;
        const __m256i sel =
            _mm256_cmpeq_epi8(len_vec, _mm256_set1_epi8(static_cast<char>(target_len)));
        result = _mm256_blendv_epi8(result, v[b], sel);
    }
    result = _mm256_blendv_epi8(inf, result, le_mask(result, k_vec));

    alignas(32) std::uint8_t buffer[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(buffer), result);
    std::memcpy(out, buffer, static_cast<std::size_t>(count));
}

}  // namespace refmatch::simd::detail

#endif  // x86

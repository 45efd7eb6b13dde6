#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <string>

#include "refmatch/simd/edit_distance.hpp"
#include "refmatch/utf8.hpp"

namespace refmatch::simd {

namespace {

using BatchFn = void (*)(const std::uint8_t*, std::size_t, const std::uint8_t*, std::size_t,
                         const std::uint8_t*, int, int, std::uint8_t*);

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Lane detect_lane() {
    if (const char* env = std::getenv("REFMATCH_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Lane::Scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Lane::Avx2;
    }
    return avx2_available() ? Lane::Avx2 : Lane::Scalar;
}

Lane g_lane = detect_lane();

BatchFn batch_fn() {
#if defined(__x86_64__) || defined(__i386__)
    if (g_lane == Lane::Avx2) return &detail::batch_banded_avx2;
#endif
    return &detail::batch_banded_scalar;
}

}  // namespace

Lane active_lane() { return g_lane; }

const char* lane_name(Lane lane) {
    switch (lane) {
        case Lane::Scalar: return "scalar";
        case Lane::Avx2: return "avx2";
    }
    return "?";
}

bool cpu_supports(Lane lane) { return lane == Lane::Scalar || avx2_available(); }

bool set_lane(Lane lane) {
    if (!cpu_supports(lane)) return false;
    g_lane = lane;
    return true;
}

PackedTerms::PackedTerms(const std::vector<std::u32string>& terms) : term_count_(terms.size()) {
    struct Entry {
        std::uint32_t index;
        std::string bytes;
    };
    std::vector<Entry> packable;
    packable.reserve(terms.size());
    for (std::uint32_t i = 0; i < terms.size(); ++i) {
        auto packed = utf8::latin1_pack(terms[i]);
        if (packed && packed->size() <= kMaxKernelLen &&
            packed->find('\0') == std::string::npos) {
            packable.push_back({i, std::move(*packed)});
        } else {
            overflow_.emplace_back(i, terms[i]);
        }
    }
    // Bucket by length so a block's DP runs over a tight row count.
    std::stable_sort(packable.begin(), packable.end(), [](const Entry& a, const Entry& b) {
        return a.bytes.size() < b.bytes.size();
    });
    for (std::size_t start = 0; start < packable.size(); start += kLanes) {
        const std::size_t end = std::min(start + kLanes, packable.size());
        Block block;
        block.count = static_cast<int>(end - start);
        block.min_len = static_cast<std::uint8_t>(packable[start].bytes.size());
        block.max_len = static_cast<std::uint8_t>(packable[end - 1].bytes.size());
        block.chars.assign(static_cast<std::size_t>(block.max_len) * kLanes, 0x00);
        for (std::size_t s = start; s < end; ++s) {
            const int lane = static_cast<int>(s - start);
            const Entry& entry = packable[s];
            block.lens[static_cast<std::size_t>(lane)] =
                static_cast<std::uint8_t>(entry.bytes.size());
            block.indices[static_cast<std::size_t>(lane)] = entry.index;
            for (std::size_t r = 0; r < entry.bytes.size(); ++r) {
                block.chars[r * kLanes + static_cast<std::size_t>(lane)] =
                    static_cast<std::uint8_t>(entry.bytes[r]);
            }
        }
        blocks_.push_back(std::move(block));
    }
}

std::vector<std::uint32_t> PackedTerms::scan(const std::u32string& query, int max_edits) const {
    std::vector<std::uint32_t> matches;
    if (max_edits < 0) return matches;
    const int k = std::min(max_edits, kMaxBandEdits);

    const auto packed_query = utf8::latin1_pack(query);
    const bool kernel_ok = packed_query && packed_query->size() <= kMaxKernelLen &&
                           !packed_query->empty() &&
                           packed_query->find('\0') == std::string::npos;
    if (kernel_ok) {
        const auto* q = reinterpret_cast<const std::uint8_t*>(packed_query->data());
        const std::size_t qlen = packed_query->size();
        const BatchFn fn = batch_fn();
        std::uint8_t out[kLanes];
        for (const Block& block : blocks_) {
            if (static_cast<std::size_t>(block.min_len) > qlen + k) continue;
            if (static_cast<std::size_t>(block.max_len) + k < qlen) continue;
            fn(q, qlen, block.chars.data(), block.max_len, block.lens.data(), block.count, k, out);
            for (int lane = 0; lane < block.count; ++lane) {
                if (out[lane] <= k) {
                    matches.push_back(block.indices[static_cast<std::size_t>(lane)]);
                }
            }
        }
    } else {
        // Non-latin1 or degenerate query: plain codepoint DP over every packed term.
        for (const Block& block : blocks_) {
            for (int lane = 0; lane < block.count; ++lane) {
                const std::size_t len = block.lens[static_cast<std::size_t>(lane)];
                std::u32string term(len, U'\0');
                for (std::size_t r = 0; r < len; ++r) {
                    term[r] = block.chars[r * kLanes + static_cast<std::size_t>(lane)];
                }
                if (within_edits(query, term, k)) {
                    matches.push_back(block.indices[static_cast<std::size_t>(lane)]);
                }
            }
        }
    }
    for (const auto& [index, term] : overflow_) {
        if (within_edits(query, term, k)) matches.push_back(index);
    }
    std::sort(matches.begin(), matches.end());
    return matches;
}

}  // namespace refmatch::simd

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Batched bounded edit distance - the inner loop of fuzzy retrieval. A fuzzy
// clause has to scan a field's whole term dictionary for terms within
// max_edits of the query term; that scan is data-parallel across dictionary
// terms. The scalar kernel is the reference semantics; the AVX2 lane computes
// 32 candidates per step with an epi8 banded DP and must produce bit-identical
// output (integer arithmetic only). Lane selection happens once at startup
// (CPU detection, overridable via REFMATCH_SIMD=scalar|avx2).

namespace refmatch::simd {

enum class Lane { Scalar, Avx2 };

Lane active_lane();
const char* lane_name(Lane lane);
// Returns false (and keeps the current lane) if unsupported on this CPU.
bool set_lane(Lane lane);
bool cpu_supports(Lane lane);

inline constexpr std::uint8_t kNoMatch = 0xFF;
inline constexpr int kLanes = 32;
inline constexpr int kMaxBandEdits = 3;      // band width 2k+1 <= 7
inline constexpr std::size_t kMaxKernelLen = 250;  // longer strings take the plain DP path

// Exact distance if <= max_edits, else kNoMatch. Operates on bytes.
std::uint8_t bounded_edit_distance(std::string_view a, std::string_view b, int max_edits);

// Codepoint-level check for strings outside the kernel's byte domain.
bool within_edits(const std::u32string& a, const std::u32string& b, int max_edits);

namespace detail {

// One packed block: `rows` rows of kLanes bytes, lane-major within a row; row r
// holds character r of every candidate, 0x00 beyond a candidate's length.
// out[lane] = distance(query, candidate[lane]) if <= max_edits, else kNoMatch.
// Lanes >= count are left untouched.
void batch_banded_scalar(const std::uint8_t* query, std::size_t query_len,
                         const std::uint8_t* chars, std::size_t rows,
                         const std::uint8_t* lens, int count, int max_edits, std::uint8_t* out);
#if defined(__x86_64__) || defined(__i386__)
void batch_banded_avx2(const std::uint8_t* query, std::size_t query_len,
                       const std::uint8_t* chars, std::size_t rows,
                       const std::uint8_t* lens, int count, int max_edits, std::uint8_t* out);
#endif

}  // namespace detail

// Length-bucketed, transposed term dictionary for batch scanning. Terms whose
// codepoints do not fit in one byte (or exceed kMaxKernelLen) go to a scalar
// overflow list; everything else is packed latin-1.
class PackedTerms {
public:
    PackedTerms() = default;
    explicit PackedTerms(const std::vector<std::u32string>& terms);

    // Ascending indices (into the constructor's term vector) of terms within
    // max_edits of query. max_edits in [0, kMaxBandEdits].
    std::vector<std::uint32_t> scan(const std::u32string& query, int max_edits) const;

    std::size_t size() const { return term_count_; }

private:
    struct Block {
        std::uint8_t min_len = 0;
        std::uint8_t max_len = 0;
        int count = 0;
        std::array<std::uint8_t, kLanes> lens{};
        std::array<std::uint32_t, kLanes> indices{};
        std::vector<std::uint8_t> chars;  // max_len rows x kLanes
    };

    std::vector<Block> blocks_;
    std::vector<std::pair<std::uint32_t, std::u32string>> overflow_;
    std::size_t term_count_ = 0;
};

}  // namespace refmatch::simd

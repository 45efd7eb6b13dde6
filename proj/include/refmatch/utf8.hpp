#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace refmatch::utf8 {

// Decodes UTF-8 into codepoints. Invalid byte sequences decode as the raw byte
// value (latin-1 salvage) so that arbitrary input never throws.
std::u32string decode(std::string_view text);

std::string encode(const std::u32string& codepoints);

// Packs a codepoint string into one byte per character when every codepoint is
// < 256. This is the representation the SIMD edit-distance kernel consumes.
std::optional<std::string> latin1_pack(const std::u32string& codepoints);

std::size_t length(std::string_view text);

}  // namespace refmatch::utf8

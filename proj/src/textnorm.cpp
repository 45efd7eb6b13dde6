#include "refmatch/textnorm.hpp"

#include <algorithm>
#include <cctype>

#include "refmatch/utf8.hpp"

namespace refmatch::textnorm {

namespace {

constexpr char32_t kAuml = 0xE4, kOuml = 0xF6, kUuml = 0xFC, kSzlig = 0xDF;
constexpr char32_t kAumlUp = 0xC4, kOumlUp = 0xD6, kUumlUp = 0xDC, kSzligUp = 0x1E9E;

bool in_strip_set(char32_t c) {
    switch (c) {
        case '.': case ',': case ';': case ':': case '!': case '?':
        case '(': case ')': case '[': case ']': case '{': case '}':
        case '"': case '\'': case '/': case '\\': case '-':
            return true;
        default:
            return false;
    }
}

char32_t to_lower(char32_t c) {
    if (c >= 'A' && c <= 'Z') return c + 32;
    switch (c) {
        case kAumlUp: return kAuml;
        case kOumlUp: return kOuml;
        case kUumlUp: return kUuml;
        case kSzligUp: return kSzlig;
        default: return c;
    }
}

}  // namespace

const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> list = {
        "der", "die", "das", "und", "the", "of",  "and", "in",
        "a",   "für", "von", "zur", "zum", "on",  "for",
    };
    return list;
}

NormalizedText normalize(const std::string& text, const NormalizeOptions& options) {
    NormalizedText result;
    result.original = text;

    std::u32string current;
    const auto flush = [&]() {
        if (current.empty()) return;
        result.tokens.push_back(utf8::encode(current));
        current.clear();
    };
    for (char32_t c : utf8::decode(text)) {
        if (in_strip_set(c) || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == 0xA0) {
            flush();
        } else {
            current.push_back(to_lower(c));
        }
    }
    flush();

    if (options.remove_stopwords) {
        const std::vector<std::string>& stop =
            options.stopwords ? *options.stopwords : default_stopwords();
        std::erase_if(result.tokens, [&](const std::string& tok) {
            return std::find(stop.begin(), stop.end(), tok) != stop.end();
        });
    }
    return result;
}

namespace {

bool is_letter(char32_t c) { return c >= 'a' && c <= 'z'; }

// Letter-level folding for the phonetic table: lowercase, umlauts to base
// vowels, ß to ss, anything non-alphabetic dropped.
std::string fold_for_cologne(const std::string& word) {
    std::string folded;
    for (char32_t c : utf8::decode(word)) {
        c = to_lower(c);
        switch (c) {
            case kAuml: folded.push_back('a'); break;
            case kOuml: folded.push_back('o'); break;
            case kUuml: folded.push_back('u'); break;
            case kSzlig: folded += "ss"; break;
            default:
                if (is_letter(c)) folded.push_back(static_cast<char>(c));
        }
    }
    return folded;
}

bool one_of(char c, const char* set) {
    for (; *set; ++set) {
        if (*set == c) return true;
    }
    return false;
}

}  // namespace

PhoneticCode cologne_encode(const std::string& word) {
    const std::string w = fold_for_cologne(word);
    std::string raw;  // per-letter digits before de-duplication
    raw.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const char c = w[i];
        const char prev = i > 0 ? w[i - 1] : '\0';
        const char next = i + 1 < w.size() ? w[i + 1] : '\0';
        switch (c) {
            case 'a': case 'e': case 'i': case 'j': case 'o': case 'u': case 'y':
                raw.push_back('0');
                break;
            case 'h':
                break;  // no code
            case 'b':
                raw.push_back('1');
                break;
            case 'p':
                raw.push_back(next == 'h' ? '3' : '1');
                break;
            case 'd': case 't':
                raw.push_back(one_of(next, "csz") ? '8' : '2');
                break;
            case 'f': case 'v': case 'w':
                raw.push_back('3');
                break;
            case 'g': case 'k': case 'q':
                raw.push_back('4');
                break;
            case 'c':
                if (i == 0) {
                    raw.push_back(one_of(next, "ahkloqrux") ? '4' : '8');
                } else if (one_of(prev, "sz")) {
                    raw.push_back('8');
                } else {
                    raw.push_back(one_of(next, "ahkoqux") ? '4' : '8');
                }
                break;
            case 'l':
                raw.push_back('5');
                break;
            case 'm': case 'n':
                raw.push_back('6');
                break;
            case 'r':
                raw.push_back('7');
                break;
            case 's': case 'z':
                raw.push_back('8');
                break;
            case 'x':
                if (one_of(prev, "ckq")) {
                    raw.push_back('8');
                } else {
                    raw.push_back('4');
                    raw.push_back('8');
                }
                break;
            default:
                break;
        }
    }

    // Collapse adjacent duplicates, drop all '0' except a leading one, then
    // collapse once more: the zero removal can bring equal digits together
    // (t-o-t -> 202 -> 22) and the final code must stay duplicate-free.
    std::string collapsed;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (i > 0 && raw[i] == raw[i - 1]) continue;
        collapsed.push_back(raw[i]);
    }
    PhoneticCode result;
    for (std::size_t i = 0; i < collapsed.size(); ++i) {
        if (collapsed[i] == '0' && i > 0) continue;
        if (!result.code.empty() && collapsed[i] == result.code.back()) continue;
        result.code.push_back(collapsed[i]);
    }
    return result;
}

std::optional<std::string> extract_year(const std::string& raw, const YearWindow& window) {
    const auto is_digit = [&](std::size_t k) {
        return k < raw.size() && std::isdigit(static_cast<unsigned char>(raw[k]));
    };
    for (std::size_t i = 0; i + 4 <= raw.size(); ++i) {
        if (!is_digit(i) || !is_digit(i + 1) || !is_digit(i + 2) || !is_digit(i + 3)) continue;
        if (i > 0 && is_digit(i - 1)) continue;      // inside a longer number
        if (is_digit(i + 4)) continue;
        const int value = (raw[i] - '0') * 1000 + (raw[i + 1] - '0') * 100 +
                          (raw[i + 2] - '0') * 10 + (raw[i + 3] - '0');
        if (value < window.min_year || value > window.max_year) continue;
        // Page-range contexts: 123-NNNN or NNNN-123.
        if (i + 4 < raw.size() && raw[i + 4] == '-' && is_digit(i + 5)) continue;
        if (i >= 2 && raw[i - 1] == '-' && is_digit(i - 2)) continue;
        return raw.substr(i, 4);  // a trailing letter suffix (1989b) is fine
    }
    return std::nullopt;
}

SegmentedReference merge_number_segment(const SegmentedReference& reference) {
    SegmentedReference merged = reference;
    if (!merged.volume_tokens.empty() || !merged.issue_tokens.empty()) {
        std::vector<SegmentToken>& number = merged.segments[SegmentKind::Number];
        number.insert(number.end(), merged.volume_tokens.begin(), merged.volume_tokens.end());
        number.insert(number.end(), merged.issue_tokens.begin(), merged.issue_tokens.end());
        merged.volume_tokens.clear();
        merged.issue_tokens.clear();
    }
    return merged;
}

SegmentedReference preprocess(const SegmentedReference& reference, const YearWindow& window) {
    SegmentedReference out = merge_number_segment(reference);
    if (!out.extracted_year) out.extracted_year = extract_year(out.raw, window);
    return out;
}

std::vector<std::string> digit_runs(const std::string& text) {
    std::vector<std::string> runs;
    std::string current;
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            current.push_back(c);
        } else if (!current.empty()) {
            runs.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) runs.push_back(std::move(current));
    return runs;
}

}  // namespace refmatch::textnorm

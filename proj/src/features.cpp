#include "refmatch/features.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "refmatch/blocking.hpp"
#include "refmatch/strsim.hpp"
#include "refmatch/textnorm.hpp"
#include "refmatch/utf8.hpp"

namespace refmatch::features {

using blocking::WeightedToken;
using strsim::WeightedSet;

GroupSet GroupSet::parse(const std::vector<std::string>& names) {
    GroupSet groups{false, false, false};
    for (const std::string& name : names) {
        if (name == "A" || name == "a") groups.a = true;
        if (name == "P" || name == "p") groups.p = true;
        if (name == "B" || name == "b") groups.b = true;
    }
    return groups;
}

std::vector<std::string> GroupSet::names() const {
    std::vector<std::string> result;
    if (a) result.push_back("A");
    if (p) result.push_back("P");
    if (b) result.push_back("B");
    return result;
}

const std::vector<FeatureDef>& full_schema() {
    static const std::vector<FeatureDef> schema = {
        {"author_surname_lev", 'A'},
        {"author_surname_phonetic_lev", 'A'},
        {"author_surname_jaccard", 'A'},
        {"title_jaccard", 'A'},
        {"title_lev_char", 'A'},
        {"title_lev_token", 'A'},
        {"source_jaccard", 'A'},
        {"source_lev_char", 'A'},
        {"year_match", 'A'},
        {"pages_jaccard", 'A'},
        {"number_jaccard", 'A'},
        {"first_author_surname_prob", 'P'},
        {"author_weighted_jaccard", 'P'},
        {"title_weighted_jaccard", 'P'},
        {"source_weighted_jaccard", 'P'},
        {"year_prob", 'P'},
        {"pages_prob", 'P'},
        {"number_prob", 'P'},
        {"title_lcs_in_raw", 'B'},
        {"source_abbrev_in_raw", 'B'},
        {"raw_year_match", 'B'},
        {"title_bigram_overlap", 'B'},
    };
    return schema;
}

std::vector<FeatureDef> schema_for(GroupSet groups) {
    std::vector<FeatureDef> result;
    for (const FeatureDef& def : full_schema()) {
        if ((def.group == 'A' && groups.a) || (def.group == 'P' && groups.p) ||
            (def.group == 'B' && groups.b)) {
            result.push_back(def);
        }
    }
    return result;
}

std::string schema_version(GroupSet groups) {
    std::string version = "fv1:";
    for (const std::string& name : groups.names()) version += name;
    return version;
}

namespace {

// Normalized tokens of a segment, each carrying its source token's probability.
std::vector<WeightedToken> weighted_norm_tokens(const SegmentedReference& ref, SegmentKind kind) {
    std::vector<WeightedToken> result;
    const auto* tokens = ref.segment(kind);
    if (!tokens) return result;
    for (const SegmentToken& tok : *tokens) {
        for (std::string& norm : textnorm::normalize(tok.text).tokens) {
            result.push_back({std::move(norm), tok.probability});
        }
    }
    return result;
}

std::vector<std::string> texts_of(const std::vector<WeightedToken>& tokens) {
    std::vector<std::string> result;
    result.reserve(tokens.size());
    for (const WeightedToken& tok : tokens) result.push_back(tok.text);
    return result;
}

std::set<std::string> set_of(const std::vector<std::string>& tokens) {
    return {tokens.begin(), tokens.end()};
}

// Duplicate keys keep the highest probability.
WeightedSet weighted_set_of(const std::vector<WeightedToken>& tokens) {
    WeightedSet ws;
    for (const WeightedToken& tok : tokens) {
        auto [it, inserted] = ws.items.emplace(tok.text, tok.probability);
        if (!inserted) it->second = std::max(it->second, tok.probability);
    }
    return ws;
}

std::optional<double> mean_segment_probability(const SegmentedReference& ref, SegmentKind kind) {
    const auto* tokens = ref.segment(kind);
    if (!tokens || tokens->empty()) return std::nullopt;
    double sum = 0.0;
    for (const SegmentToken& tok : *tokens) sum += tok.probability;
    return sum / static_cast<double>(tokens->size());
}

std::string join(const std::vector<std::string>& tokens) {
    std::string result;
    for (const std::string& tok : tokens) {
        if (!result.empty()) result.push_back(' ');
        result += tok;
    }
    return result;
}

// Greedy best-pair assignment by descending similarity; returns the mean
// similarity over assigned pairs. Author ordering differs between sources, so
// position-wise comparison would be unfair.
double greedy_match_mean(const std::vector<std::string>& left,
                         const std::vector<std::string>& right) {
    struct Cand {
        double sim;
        std::size_t i, j;
    };
    std::vector<Cand> cands;
    cands.reserve(left.size() * right.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
            cands.push_back({strsim::levenshtein_similarity(left[i], right[j]), i, j});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.sim != b.sim) return a.sim > b.sim;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::vector<bool> used_left(left.size(), false), used_right(right.size(), false);
    double sum = 0.0;
    std::size_t assigned = 0;
    for (const Cand& c : cands) {
        if (used_left[c.i] || used_right[c.j]) continue;
        used_left[c.i] = true;
        used_right[c.j] = true;
        sum += c.sim;
        ++assigned;
    }
    return assigned == 0 ? 0.0 : sum / static_cast<double>(assigned);
}

std::vector<std::string> phonetic_codes(const std::vector<std::string>& tokens) {
    std::vector<std::string> codes;
    codes.reserve(tokens.size());
    for (const std::string& tok : tokens) codes.push_back(textnorm::cologne_encode(tok).code);
    return codes;
}

std::vector<std::string> record_surnames(const BibRecord& record) {
    std::vector<std::string> result;
    for (const Author& a : record.authors) {
        for (std::string& tok : textnorm::normalize(a.surname).tokens) {
            if (utf8::length(tok) >= 2) result.push_back(std::move(tok));
        }
    }
    return result;
}

std::vector<std::string> record_page_runs(const BibRecord& record) {
    std::vector<std::string> result;
    if (!record.pages) return result;
    for (std::string& run : textnorm::digit_runs(record.pages->start)) {
        result.push_back(std::move(run));
    }
    if (record.pages->end) {
        for (std::string& run : textnorm::digit_runs(*record.pages->end)) {
            result.push_back(std::move(run));
        }
    }
    return result;
}

std::vector<std::string> record_number_runs(const BibRecord& record) {
    std::vector<std::string> result;
    if (record.volume) {
        for (std::string& run : textnorm::digit_runs(*record.volume)) {
            result.push_back(std::move(run));
        }
    }
    if (record.issue) {
        for (std::string& run : textnorm::digit_runs(*record.issue)) {
            result.push_back(std::move(run));
        }
    }
    return result;
}

std::string fold_lower(const std::string& text) {
    std::u32string decoded = utf8::decode(text);
    for (char32_t& c : decoded) {
        if (c >= 'A' && c <= 'Z') c += 32;
        if (c == 0xC4 || c == 0xD6 || c == 0xDC) c += 32;
    }
    return utf8::encode(decoded);
}

std::set<std::pair<std::string, std::string>> bigram_set(const std::vector<std::string>& tokens) {
    const auto grams = strsim::bigrams(tokens);
    return {grams.begin(), grams.end()};
}

}  // namespace

std::vector<double> extract_features(const SegmentedReference& ref, const BibRecord& record,
                                     GroupSet groups) {
    std::vector<double> out;
    out.reserve(full_schema().size());

    const auto ref_surnames = blocking::surname_tokens(ref);
    const auto ref_surname_texts = texts_of(ref_surnames);
    const auto rec_surnames = record_surnames(record);

    const auto ref_title = weighted_norm_tokens(ref, SegmentKind::Title);
    const auto ref_title_texts = texts_of(ref_title);
    const auto rec_title_tokens = textnorm::normalize(record.title).tokens;

    const auto ref_source = weighted_norm_tokens(ref, SegmentKind::Source);
    const auto ref_source_texts = texts_of(ref_source);
    const auto rec_source_tokens = textnorm::normalize(record.source).tokens;

    const auto ref_year = blocking::year_from_segment(ref);
    const auto ref_pages = [&] {
        std::vector<std::string> runs;
        if (const auto* tokens = ref.segment(SegmentKind::Page)) {
            for (const SegmentToken& tok : *tokens) {
                for (std::string& run : textnorm::digit_runs(tok.text)) {
                    runs.push_back(std::move(run));
                }
            }
        }
        return runs;
    }();
    const auto ref_numbers = [&] {
        std::vector<std::string> runs;
        if (const auto* tokens = ref.segment(SegmentKind::Number)) {
            for (const SegmentToken& tok : *tokens) {
                for (std::string& run : textnorm::digit_runs(tok.text)) {
                    runs.push_back(std::move(run));
                }
            }
        }
        return runs;
    }();
    const auto rec_pages = record_page_runs(record);
    const auto rec_numbers = record_number_runs(record);

    if (groups.a) {
        // author
        if (ref_surname_texts.empty() || rec_surnames.empty()) {
            out.push_back(kMissing);
            out.push_back(kMissing);
            out.push_back(kMissing);
        } else {
            out.push_back(greedy_match_mean(ref_surname_texts, rec_surnames));
            out.push_back(
                greedy_match_mean(phonetic_codes(ref_surname_texts), phonetic_codes(rec_surnames)));
            out.push_back(strsim::jaccard(set_of(ref_surname_texts), set_of(rec_surnames)));
        }
        // title
        if (ref_title_texts.empty() || rec_title_tokens.empty()) {
            out.push_back(kMissing);
            out.push_back(kMissing);
            out.push_back(kMissing);
        } else {
            out.push_back(strsim::jaccard(set_of(ref_title_texts), set_of(rec_title_tokens)));
            out.push_back(strsim::levenshtein_similarity(join(ref_title_texts),
                                                         join(rec_title_tokens)));
            out.push_back(strsim::token_levenshtein_similarity(ref_title_texts, rec_title_tokens));
        }
        // source
        if (ref_source_texts.empty() || rec_source_tokens.empty()) {
            out.push_back(kMissing);
            out.push_back(kMissing);
        } else {
            out.push_back(strsim::jaccard(set_of(ref_source_texts), set_of(rec_source_tokens)));
            out.push_back(strsim::levenshtein_similarity(join(ref_source_texts),
                                                         join(rec_source_tokens)));
        }
        // year / pages / number
        out.push_back(!ref_year || !record.year ? kMissing : (*ref_year == *record.year ? 1.0 : 0.0));
        out.push_back(ref_pages.empty() || rec_pages.empty()
                          ? kMissing
                          : strsim::jaccard(set_of(ref_pages), set_of(rec_pages)));
        out.push_back(ref_numbers.empty() || rec_numbers.empty()
                          ? kMissing
                          : strsim::jaccard(set_of(ref_numbers), set_of(rec_numbers)));
    }

    if (groups.p) {
        out.push_back(ref_surnames.empty() ? kMissing : ref_surnames.front().probability);
        out.push_back(ref_surnames.empty() || rec_surnames.empty()
                          ? kMissing
                          : strsim::weighted_jaccard(weighted_set_of(ref_surnames),
                                                     set_of(rec_surnames)));
        out.push_back(ref_title.empty() || rec_title_tokens.empty()
                          ? kMissing
                          : strsim::weighted_jaccard(weighted_set_of(ref_title),
                                                     set_of(rec_title_tokens)));
        out.push_back(ref_source.empty() || rec_source_tokens.empty()
                          ? kMissing
                          : strsim::weighted_jaccard(weighted_set_of(ref_source),
                                                     set_of(rec_source_tokens)));
        const auto year_prob = mean_segment_probability(ref, SegmentKind::Year);
        const auto pages_prob = mean_segment_probability(ref, SegmentKind::Page);
        const auto number_prob = mean_segment_probability(ref, SegmentKind::Number);
        out.push_back(year_prob.value_or(kMissing));
        out.push_back(pages_prob.value_or(kMissing));
        out.push_back(number_prob.value_or(kMissing));
    }

    if (groups.b) {
        if (record.title.empty()) {
            out.push_back(kMissing);
        } else {
            const double lcs = static_cast<double>(
                strsim::longest_common_substring(record.title, ref.raw));
            out.push_back(lcs / static_cast<double>(utf8::length(record.title)));
        }
        if (!record.source_abbrev || record.source_abbrev->empty()) {
            out.push_back(kMissing);
        } else {
            const std::string raw_folded = fold_lower(ref.raw);
            const std::string abbrev_folded = fold_lower(*record.source_abbrev);
            out.push_back(raw_folded.find(abbrev_folded) != std::string::npos ? 1.0 : 0.0);
        }
        out.push_back(!ref.extracted_year || !record.year
                          ? kMissing
                          : (*ref.extracted_year == *record.year ? 1.0 : 0.0));
        const auto rec_bigrams = bigram_set(rec_title_tokens);
        if (rec_bigrams.empty()) {
            out.push_back(kMissing);
        } else {
            const auto raw_bigrams = bigram_set(textnorm::normalize(ref.raw).tokens);
            std::size_t present = 0;
            for (const auto& gram : rec_bigrams) present += raw_bigrams.count(gram);
            out.push_back(static_cast<double>(present) / static_cast<double>(rec_bigrams.size()));
        }
    }

    return out;
}

}  // namespace refmatch::features

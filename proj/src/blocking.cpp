#include "refmatch/blocking.hpp"

#include <algorithm>

#include "refmatch/strsim.hpp"
#include "refmatch/utf8.hpp"

namespace refmatch::blocking {

using index::Clause;

std::vector<SegmentKind> SegmentCombination::kinds() const {
    std::vector<SegmentKind> result;
    for (SegmentKind kind : kAllSegmentKinds) {
        if (contains(kind)) result.push_back(kind);
    }
    return result;
}

std::string SegmentCombination::name() const {
    std::string result;
    for (SegmentKind kind : kinds()) {
        if (!result.empty()) result.push_back('+');
        result += segment_kind_name(kind);
    }
    return result;
}

SegmentCombination SegmentCombination::of(std::initializer_list<SegmentKind> kinds) {
    SegmentCombination combo;
    for (SegmentKind kind : kinds) combo.bits |= (1u << static_cast<int>(kind));
    return combo;
}

std::optional<SegmentCombination> SegmentCombination::parse(
    const std::vector<std::string>& kind_names) {
    SegmentCombination combo;
    for (const std::string& name : kind_names) {
        const auto kind = segment_kind_from_name(name);
        if (!kind) return std::nullopt;
        combo.bits |= (1u << static_cast<int>(*kind));
    }
    if (combo.bits == 0) return std::nullopt;
    return combo;
}

const std::vector<SegmentCombination>& SegmentCombination::all() {
    static const std::vector<SegmentCombination> combos = [] {
        std::vector<SegmentCombination> result;
        for (std::uint8_t bits = 1; bits < 64; ++bits) result.push_back({bits});
        return result;
    }();
    return combos;
}

const char* strategy_name(Strategy strategy) {
    switch (strategy) {
        case Strategy::SegmentsOnly: return "segments";
        case Strategy::StringsOnly: return "strings";
        case Strategy::Combined: return "combined";
    }
    return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
    if (name == "segments") return Strategy::SegmentsOnly;
    if (name == "strings") return Strategy::StringsOnly;
    if (name == "combined") return Strategy::Combined;
    return std::nullopt;
}

std::vector<WeightedToken> surname_tokens(const SegmentedReference& reference) {
    std::vector<WeightedToken> result;
    const auto* tokens = reference.segment(SegmentKind::Author);
    if (!tokens) return result;
    for (const SegmentToken& tok : *tokens) {
        for (const std::string& norm : textnorm::normalize(tok.text).tokens) {
            if (utf8::length(norm) >= 2) result.push_back({norm, tok.probability});
        }
    }
    return result;
}

std::optional<std::string> year_from_segment(const SegmentedReference& reference,
                                             const textnorm::YearWindow& window) {
    const auto* tokens = reference.segment(SegmentKind::Year);
    if (!tokens) return std::nullopt;
    for (const SegmentToken& tok : *tokens) {
        if (auto year = textnorm::extract_year(tok.text, window)) return year;
    }
    return std::nullopt;
}

namespace {

std::vector<std::string> segment_norm_tokens(const SegmentedReference& reference,
                                             SegmentKind kind) {
    std::vector<std::string> result;
    const auto* tokens = reference.segment(kind);
    if (!tokens) return result;
    for (const SegmentToken& tok : *tokens) {
        for (std::string& norm : textnorm::normalize(tok.text).tokens) {
            result.push_back(std::move(norm));
        }
    }
    return result;
}

std::vector<std::string> segment_digit_runs(const SegmentedReference& reference,
                                            SegmentKind kind) {
    std::vector<std::string> result;
    const auto* tokens = reference.segment(kind);
    if (!tokens) return result;
    for (const SegmentToken& tok : *tokens) {
        for (std::string& run : textnorm::digit_runs(tok.text)) {
            if (std::find(result.begin(), result.end(), run) == result.end()) {
                result.push_back(std::move(run));
            }
        }
    }
    return result;
}

std::optional<std::string> start_page(const SegmentedReference& reference) {
    const auto runs = segment_digit_runs(reference, SegmentKind::Page);
    if (runs.empty()) return std::nullopt;
    return runs.front();
}

std::optional<Clause> kind_clause(const SegmentedReference& reference, SegmentKind kind,
                                  const textnorm::YearWindow& window) {
    switch (kind) {
        case SegmentKind::Author: {
            const auto surnames = surname_tokens(reference);
            if (surnames.empty()) return std::nullopt;
            std::vector<Clause> options;
            options.reserve(surnames.size());
            for (const WeightedToken& s : surnames) {
                options.push_back(Clause::exact("authors_surname", s.text));
            }
            return Clause::any_of(std::move(options));
        }
        case SegmentKind::Year: {
            const auto year = year_from_segment(reference, window);
            if (!year) return std::nullopt;
            return Clause::exact("year", *year);
        }
        case SegmentKind::Title:
        case SegmentKind::Source: {
            const std::string field = kind == SegmentKind::Title ? "title" : "source";
            const auto tokens = segment_norm_tokens(reference, kind);
            if (tokens.empty()) return std::nullopt;
            std::vector<Clause> parts;
            parts.reserve(tokens.size());
            for (const std::string& tok : tokens) parts.push_back(Clause::fuzzy(field, tok, 2));
            return Clause::all_of(std::move(parts));
        }
        case SegmentKind::Number: {
            const auto numbers = segment_digit_runs(reference, SegmentKind::Number);
            if (numbers.empty()) return std::nullopt;
            std::vector<Clause> options;
            for (const std::string& n : numbers) {
                options.push_back(Clause::exact("volume", n));
                options.push_back(Clause::exact("issue", n));
            }
            return Clause::any_of(std::move(options));
        }
        case SegmentKind::Page: {
            const auto page = start_page(reference);
            if (!page) return std::nullopt;
            return Clause::exact("pages", *page);
        }
    }
    return std::nullopt;
}

}  // namespace

bool combination_applicable(const SegmentedReference& reference, SegmentCombination combo,
                            const textnorm::YearWindow& window) {
    for (SegmentKind kind : combo.kinds()) {
        if (!kind_clause(reference, kind, window)) return false;
    }
    return true;
}

std::optional<Clause> combination_query(const SegmentedReference& reference,
                                        SegmentCombination combo,
                                        const textnorm::YearWindow& window) {
    std::vector<Clause> parts;
    for (SegmentKind kind : combo.kinds()) {
        auto clause = kind_clause(reference, kind, window);
        if (!clause) return std::nullopt;  // missing kind: skip the combination
        parts.push_back(std::move(*clause));
    }
    if (parts.empty()) return std::nullopt;
    return Clause::all_of(std::move(parts));
}

std::vector<Clause> segment_queries(const SegmentedReference& reference,
                                    const std::set<SegmentCombination>& combos,
                                    const textnorm::YearWindow& window) {
    std::vector<Clause> queries;
    const auto& enabled = combos.empty()
                              ? std::set<SegmentCombination>(SegmentCombination::all().begin(),
                                                             SegmentCombination::all().end())
                              : combos;
    for (const SegmentCombination combo : enabled) {
        if (auto query = combination_query(reference, combo, window)) {
            queries.push_back(std::move(*query));
        }
    }
    return queries;
}

std::vector<Clause> string_queries(const SegmentedReference& reference,
                                   const BlockingConfig& config) {
    std::vector<Clause> queries;
    textnorm::NormalizeOptions options;
    options.remove_stopwords = true;
    if (!config.stopwords.empty()) options.stopwords = &config.stopwords;
    const auto tokens = textnorm::normalize(reference.raw, options).tokens;
    const auto grams = strsim::bigrams(tokens);
    if (grams.empty()) return queries;

    std::vector<Clause> phrases;
    phrases.reserve(grams.size());
    for (const auto& [first, second] : grams) {
        phrases.push_back(Clause::adjacent("title", first, second));
    }
    Clause bigram_query = Clause::any_of(std::move(phrases));

    std::optional<std::string> year = reference.extracted_year;
    if (!year) year = textnorm::extract_year(reference.raw, config.year_window);
    if (year) {
        queries.push_back(
            Clause::all_of({Clause::exact("year", *year), bigram_query}));
    }
    queries.push_back(std::move(bigram_query));
    return queries;
}

std::vector<Clause> queries_for(const SegmentedReference& reference,
                                const BlockingConfig& config) {
    std::vector<Clause> queries;
    if (config.strategy != Strategy::StringsOnly) {
        queries = segment_queries(reference, config.enabled_combinations, config.year_window);
    }
    if (config.strategy != Strategy::SegmentsOnly) {
        for (Clause& q : string_queries(reference, config)) queries.push_back(std::move(q));
    }
    return queries;
}

std::vector<std::vector<std::string>> ranked_blocks(const SegmentedReference& reference,
                                                    const index::Index& idx,
                                                    const BlockingConfig& config) {
    std::vector<std::vector<std::string>> blocks;
    for (const Clause& query : queries_for(reference, config)) {
        const auto hits = idx.search(query, static_cast<std::size_t>(config.cutoff));
        std::vector<std::string> ids;
        ids.reserve(hits.size());
        for (const index::RankedHit& hit : hits) ids.push_back(hit.record_id);
        blocks.push_back(std::move(ids));
    }
    return blocks;
}

std::set<std::string> retrieve_candidates(const SegmentedReference& reference,
                                          const index::Index& idx,
                                          const BlockingConfig& config) {
    std::set<std::string> candidates;
    for (const std::vector<std::string>& block : ranked_blocks(reference, idx, config)) {
        candidates.insert(block.begin(), block.end());
    }
    return candidates;
}

CombinationFilterResult filter_combinations(const std::vector<SegmentedReference>& references,
                                            const GoldStandard& gold, const index::Index& idx,
                                            const BlockingConfig& config) {
    CombinationFilterResult result;
    // Measured over references with at least one verified match; references
    // known to have none would cap every combination's precision at the
    // matchable fraction and tell us nothing about the combination itself.
    std::vector<const SegmentedReference*> matchable;
    for (const SegmentedReference& ref : references) {
        const auto it = gold.entries.find(ref.id);
        if (it != gold.entries.end() && !it->second.empty()) matchable.push_back(&ref);
    }

    for (const SegmentCombination combo : SegmentCombination::all()) {
        CombinationStats stats;
        stats.combo = combo;
        std::size_t correct = 0;
        std::size_t retrieved_total = 0;
        std::size_t retrieved_correct = 0;
        for (const SegmentedReference* ref : matchable) {
            const auto query = combination_query(*ref, combo, config.year_window);
            if (!query) continue;
            ++stats.applicable;
            const std::size_t limit =
                config.precision_over_all ? static_cast<std::size_t>(config.cutoff) : 1;
            const auto hits = idx.search(*query, limit);
            if (hits.empty()) continue;
            ++stats.evaluated;
            const std::set<std::string>& golden = gold.entries.at(ref->id);
            if (config.precision_over_all) {
                retrieved_total += hits.size();
                for (const index::RankedHit& hit : hits) {
                    retrieved_correct += golden.count(hit.record_id);
                }
            } else if (golden.count(hits.front().record_id)) {
                ++correct;
            }
        }
        if (stats.evaluated > 0) {
            stats.precision = config.precision_over_all
                                  ? static_cast<double>(retrieved_correct) /
                                        static_cast<double>(retrieved_total)
                                  : static_cast<double>(correct) /
                                        static_cast<double>(stats.evaluated);
        }
        // Zero-applicable combinations are only reported; zero-hit ones keep
        // precision 0, so they survive solely a zero threshold.
        stats.retained =
            stats.applicable > 0 && stats.precision >= config.combination_threshold;
        if (stats.retained) result.retained.insert(combo);
        result.stats.push_back(stats);
    }
    return result;
}

}  // namespace refmatch::blocking

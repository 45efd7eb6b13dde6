#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "refmatch/model.hpp"
#include "refmatch/simd/edit_distance.hpp"

namespace refmatch::index {

// Boolean retrieval expression over record fields.
struct Clause {
    enum class Kind { ExactTerm, FuzzyTerm, Phrase, And, Or };

    Kind kind = Kind::ExactTerm;
    std::string field;                            // leaf clauses
    std::string term;                             // ExactTerm / FuzzyTerm
    int max_edits = 2;                            // FuzzyTerm, 1 or 2
    std::pair<std::string, std::string> phrase;   // Phrase: adjacent token pair
    std::vector<Clause> children;                 // And / Or, never empty

    static Clause exact(std::string field, std::string term);
    static Clause fuzzy(std::string field, std::string term, int max_edits = 2);
    static Clause adjacent(std::string field, std::string first, std::string second);
    static Clause all_of(std::vector<Clause> children);
    static Clause any_of(std::vector<Clause> children);
};

struct RankedHit {
    std::string record_id;
    double score = 0.0;

    bool operator==(const RankedHit&) const = default;
};

// Indexed fields. authors_surname_phonetic stores Cologne codes of surnames;
// volume/issue/pages store digit runs; year the 4-digit string.
extern const std::vector<std::string> kDefaultIndexedFields;

struct IndexConfig {
    std::vector<std::string> fields = kDefaultIndexedFields;
};

// Tokenization contract shared by the engine and the test oracle: how one
// record field maps to index terms.
std::vector<std::string> tokenize_field(const BibRecord& record, const std::string& field);

// Immutable in-process inverted index with tf-idf ranking.
//
// score(doc, clause) = sum over matching leaf contributions, where one term
// contributes sqrt(tf) * idf^2 / sqrt(field_length) with
// idf = 1 + ln(N / (df + 1)). Fuzzy leaves add the contribution of every
// dictionary term within max_edits, in ascending term order; phrases use the
// adjacent-occurrence count as tf and the matched-document count as df.
// Result lists sort by (score desc, record_id asc) and search(q, k1) is a
// prefix of search(q, k2) for k1 <= k2.
class Index {
public:
    static Index build(const std::vector<BibRecord>& records, const IndexConfig& config = {});

    std::vector<RankedHit> search(const Clause& query, std::size_t limit) const;

    std::size_t doc_count() const { return doc_ids_.size(); }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    std::vector<std::string> field_names() const;

    // Versioned binary persistence; layout stable across runs of one build.
    void save(const std::string& path) const;
    static Index load(const std::string& path);

private:
    struct Posting {
        std::uint32_t doc = 0;
        std::uint32_t tf = 0;
        std::vector<std::uint32_t> positions;
    };

    struct FieldIndex {
        std::vector<std::string> terms;  // sorted (bytewise = codepoint order)
        std::vector<std::vector<Posting>> postings;  // by term ordinal, docs ascending
        std::unordered_map<std::string, std::uint32_t> term_lookup;
        std::vector<std::uint32_t> field_lengths;  // per doc ordinal, 0 = field absent
        simd::PackedTerms packed;

        void finalize();
    };

    using ScoredDocs = std::vector<std::pair<std::uint32_t, double>>;  // docs ascending

    const FieldIndex& field_or_throw(const std::string& field) const;
    ScoredDocs evaluate(const Clause& clause) const;
    ScoredDocs evaluate_exact(const FieldIndex& fi, const std::string& term) const;
    ScoredDocs evaluate_fuzzy(const FieldIndex& fi, const std::string& field,
                              const std::string& term, int max_edits) const;
    ScoredDocs evaluate_phrase(const FieldIndex& fi, const std::string& first,
                               const std::string& second) const;
    double term_score(const FieldIndex& fi, std::uint32_t term_ordinal,
                      const Posting& posting) const;

    struct FuzzyCache {
        std::mutex mutex;
        std::unordered_map<std::string, std::shared_ptr<const std::vector<std::uint32_t>>> entries;
    };

    std::vector<std::string> doc_ids_;
    std::vector<std::pair<std::string, FieldIndex>> fields_;  // sorted by name
    std::unique_ptr<FuzzyCache> fuzzy_cache_ = std::make_unique<FuzzyCache>();
};

}  // namespace refmatch::index

#pragma once

// Linear-scan query evaluator: the independent oracle for the retrieval
// engine. It never touches Index internals; it re-derives everything from the
// records via the shared tokenize_field contract, evaluates boolean semantics
// per record and reproduces the documented tf-idf formula with the same
// operand ordering, so results must match the engine bit for bit.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "refmatch/index.hpp"
#include "refmatch/model.hpp"
#include "refmatch/rng.hpp"
#include "refmatch/strsim.hpp"

namespace oracle {

using refmatch::BibRecord;
using refmatch::index::Clause;
using refmatch::index::RankedHit;

class ScanEvaluator {
public:
    explicit ScanEvaluator(const std::vector<BibRecord>& records) : records_(records) {
        for (const std::string& field : refmatch::index::kDefaultIndexedFields) {
            auto& docs = tokens_[field];
            docs.reserve(records.size());
            for (const BibRecord& record : records) {
                docs.push_back(refmatch::index::tokenize_field(record, field));
            }
        }
    }

    std::vector<RankedHit> search(const Clause& query, std::size_t limit) const {
        std::vector<RankedHit> hits;
        for (std::size_t doc = 0; doc < records_.size(); ++doc) {
            double score = 0.0;
            if (matches(query, doc, score)) {
                hits.push_back(RankedHit{records_[doc].id, score});
            }
        }
        std::sort(hits.begin(), hits.end(), [](const RankedHit& a, const RankedHit& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.record_id < b.record_id;
        });
        if (hits.size() > limit) hits.resize(limit);
        return hits;
    }

private:
    const std::vector<std::string>& doc_tokens(const std::string& field, std::size_t doc) const {
        return tokens_.at(field)[doc];
    }

    double term_score(const std::string& field, const std::string& term, std::size_t doc) const {
        std::size_t tf = 0;
        for (const std::string& tok : doc_tokens(field, doc)) tf += tok == term ? 1 : 0;
        std::size_t df = 0;
        for (std::size_t d = 0; d < records_.size(); ++d) {
            const auto& toks = doc_tokens(field, d);
            df += std::find(toks.begin(), toks.end(), term) != toks.end() ? 1 : 0;
        }
        const double n = static_cast<double>(records_.size());
        const double idf = 1.0 + std::log(n / (static_cast<double>(df) + 1.0));
        return std::sqrt(static_cast<double>(tf)) * idf * idf /
               std::sqrt(static_cast<double>(doc_tokens(field, doc).size()));
    }

    // Unique tokens of the whole field vocabulary within max_edits, ascending.
    std::set<std::string> fuzzy_matches(const std::string& field, const std::string& term,
                                        int max_edits) const {
        std::set<std::string> matched;
        for (std::size_t d = 0; d < records_.size(); ++d) {
            for (const std::string& tok : doc_tokens(field, d)) {
                if (refmatch::strsim::levenshtein(tok, term) <=
                    static_cast<std::size_t>(max_edits)) {
                    matched.insert(tok);
                }
            }
        }
        return matched;
    }

    std::size_t phrase_count(const std::string& field, std::size_t doc,
                             const std::pair<std::string, std::string>& phrase) const {
        const auto& toks = doc_tokens(field, doc);
        std::size_t count = 0;
        for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
            if (toks[i] == phrase.first && toks[i + 1] == phrase.second) ++count;
        }
        return count;
    }

    std::size_t phrase_df(const std::string& field,
                          const std::pair<std::string, std::string>& phrase) const {
        std::size_t df = 0;
        for (std::size_t d = 0; d < records_.size(); ++d) {
            df += phrase_count(field, d, phrase) > 0 ? 1 : 0;
        }
        return df;
    }

    bool matches(const Clause& clause, std::size_t doc, double& score) const {
        switch (clause.kind) {
            case Clause::Kind::ExactTerm: {
                const auto& toks = doc_tokens(clause.field, doc);
                if (std::find(toks.begin(), toks.end(), clause.term) == toks.end()) return false;
                score = term_score(clause.field, clause.term, doc);
                return true;
            }
            case Clause::Kind::FuzzyTerm: {
                const auto matched = fuzzy_matches(clause.field, clause.term, clause.max_edits);
                const auto& toks = doc_tokens(clause.field, doc);
                double sum = 0.0;
                bool any = false;
                for (const std::string& term : matched) {  // std::set: ascending
                    if (std::find(toks.begin(), toks.end(), term) != toks.end()) {
                        sum += term_score(clause.field, term, doc);
                        any = true;
                    }
                }
                if (!any) return false;
                score = sum;
                return true;
            }
            case Clause::Kind::Phrase: {
                const std::size_t count = phrase_count(clause.field, doc, clause.phrase);
                if (count == 0) return false;
                const double n = static_cast<double>(records_.size());
                const double idf =
                    1.0 +
                    std::log(n / (static_cast<double>(phrase_df(clause.field, clause.phrase)) +
                                  1.0));
                score = std::sqrt(static_cast<double>(count)) * idf * idf /
                        std::sqrt(static_cast<double>(doc_tokens(clause.field, doc).size()));
                return true;
            }
            case Clause::Kind::And: {
                double total = 0.0;
                bool first = true;
                for (const Clause& child : clause.children) {
                    double child_score = 0.0;
                    if (!matches(child, doc, child_score)) return false;
                    total = first ? child_score : total + child_score;
                    first = false;
                }
                score = total;
                return true;
            }
            case Clause::Kind::Or: {
                double total = 0.0;
                bool any = false;
                for (const Clause& child : clause.children) {
                    double child_score = 0.0;
                    if (matches(child, doc, child_score)) {
                        total += child_score;
                        any = true;
                    }
                }
                if (!any) return false;
                score = total;
                return true;
            }
        }
        return false;
    }

    const std::vector<BibRecord>& records_;
    std::map<std::string, std::vector<std::vector<std::string>>> tokens_;
};

// Random clause over the vocabulary actually present in the records (plus some
// near-miss terms), depth-bounded.
class ClauseGenerator {
public:
    ClauseGenerator(const std::vector<BibRecord>& records, std::uint64_t seed) : rng_(seed) {
        for (const std::string& field : refmatch::index::kDefaultIndexedFields) {
            std::set<std::string> vocab;
            for (const BibRecord& record : records) {
                for (const std::string& tok : refmatch::index::tokenize_field(record, field)) {
                    vocab.insert(tok);
                }
            }
            if (!vocab.empty()) {
                fields_.push_back(field);
                vocab_[field].assign(vocab.begin(), vocab.end());
            }
        }
    }

    Clause generate(int depth = 0) {
        const std::size_t roll = rng_.index(depth >= 2 ? 3u : 5u);
        const std::string& field = rng_.pick(fields_);
        const std::vector<std::string>& vocab = vocab_.at(field);
        switch (roll) {
            case 0:
                return Clause::exact(field, pick_term(vocab));
            case 1:
                return Clause::fuzzy(field, pick_term(vocab), 1 + static_cast<int>(rng_.index(2)));
            case 2:
                return Clause::adjacent(field, pick_term(vocab), pick_term(vocab));
            default: {
                std::vector<Clause> children;
                const std::size_t count = 1 + rng_.index(3);
                for (std::size_t i = 0; i < count; ++i) children.push_back(generate(depth + 1));
                return roll == 3 ? Clause::all_of(std::move(children))
                                 : Clause::any_of(std::move(children));
            }
        }
    }

private:
    std::string pick_term(const std::vector<std::string>& vocab) {
        std::string term = rng_.pick(vocab);
        if (rng_.chance(0.3) && !term.empty()) {
            term[rng_.index(term.size())] =
                static_cast<char>('a' + rng_.index(26));  // near-miss perturbation
        }
        return term;
    }

    refmatch::Rng rng_;
    std::vector<std::string> fields_;
    std::map<std::string, std::vector<std::string>> vocab_;
};

}  // namespace oracle

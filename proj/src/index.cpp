#include "refmatch/index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "refmatch/error.hpp"
#include "refmatch/textnorm.hpp"
#include "refmatch/utf8.hpp"

namespace refmatch::index {

Clause Clause::exact(std::string field, std::string term) {
    Clause c;
    c.kind = Kind::ExactTerm;
    c.field = std::move(field);
    c.term = std::move(term);
    return c;
}

Clause Clause::fuzzy(std::string field, std::string term, int max_edits) {
    Clause c;
    c.kind = Kind::FuzzyTerm;
    c.field = std::move(field);
    c.term = std::move(term);
    c.max_edits = max_edits;
    return c;
}

Clause Clause::adjacent(std::string field, std::string first, std::string second) {
    Clause c;
    c.kind = Kind::Phrase;
    c.field = std::move(field);
    c.phrase = {std::move(first), std::move(second)};
    return c;
}

Clause Clause::all_of(std::vector<Clause> children) {
    Clause c;
    c.kind = Kind::And;
    c.children = std::move(children);
    return c;
}

Clause Clause::any_of(std::vector<Clause> children) {
    Clause c;
    c.kind = Kind::Or;
    c.children = std::move(children);
    return c;
}

const std::vector<std::string> kDefaultIndexedFields = {
    "authors_surname", "authors_surname_phonetic", "title", "source", "source_abbrev",
    "year",            "volume",                   "issue", "pages",
};

std::vector<std::string> tokenize_field(const BibRecord& record, const std::string& field) {
    using textnorm::digit_runs;
    using textnorm::normalize;
    std::vector<std::string> tokens;
    if (field == "authors_surname") {
        for (const Author& a : record.authors) {
            for (std::string& tok : normalize(a.surname).tokens) tokens.push_back(std::move(tok));
        }
    } else if (field == "authors_surname_phonetic") {
        for (const Author& a : record.authors) {
            for (const std::string& tok : normalize(a.surname).tokens) {
                std::string code = textnorm::cologne_encode(tok).code;
                if (!code.empty()) tokens.push_back(std::move(code));
            }
        }
    } else if (field == "title") {
        tokens = normalize(record.title).tokens;
    } else if (field == "source") {
        tokens = normalize(record.source).tokens;
    } else if (field == "source_abbrev") {
        if (record.source_abbrev) tokens = normalize(*record.source_abbrev).tokens;
    } else if (field == "year") {
        if (record.year) tokens.push_back(*record.year);
    } else if (field == "volume") {
        if (record.volume) tokens = digit_runs(*record.volume);
    } else if (field == "issue") {
        if (record.issue) tokens = digit_runs(*record.issue);
    } else if (field == "pages") {
        if (record.pages) {
            std::vector<std::string> runs = digit_runs(record.pages->start);
            if (!runs.empty()) tokens.push_back(std::move(runs.front()));
        }
    } else {
        throw ConfigError("unknown index field: " + field);
    }
    return tokens;
}

void Index::FieldIndex::finalize() {
    std::vector<std::u32string> decoded;
    decoded.reserve(terms.size());
    term_lookup.reserve(terms.size());
    for (std::uint32_t t = 0; t < terms.size(); ++t) {
        term_lookup.emplace(terms[t], t);
        decoded.push_back(utf8::decode(terms[t]));
    }
    packed = simd::PackedTerms(decoded);
}

Index Index::build(const std::vector<BibRecord>& records, const IndexConfig& config) {
    Index idx;
    idx.doc_ids_.reserve(records.size());
    {
        std::unordered_map<std::string, std::uint32_t> seen;
        for (const BibRecord& record : records) {
            if (!seen.emplace(record.id, 0).second) {
                throw InputError("duplicate record id: " + record.id);
            }
            idx.doc_ids_.push_back(record.id);
        }
    }

    std::vector<std::string> fields = config.fields;
    std::sort(fields.begin(), fields.end());
    for (const std::string& field : fields) {
        // term -> postings under construction
        std::map<std::string, std::vector<Posting>> building;
        FieldIndex fi;
        fi.field_lengths.assign(records.size(), 0);
        for (std::uint32_t doc = 0; doc < records.size(); ++doc) {
            const std::vector<std::string> tokens = tokenize_field(records[doc], field);
            fi.field_lengths[doc] = static_cast<std::uint32_t>(tokens.size());
            for (std::uint32_t pos = 0; pos < tokens.size(); ++pos) {
                std::vector<Posting>& plist = building[tokens[pos]];
                if (plist.empty() || plist.back().doc != doc) {
                    plist.push_back(Posting{doc, 0, {}});
                }
                plist.back().tf += 1;
                plist.back().positions.push_back(pos);
            }
        }
        fi.terms.reserve(building.size());
        fi.postings.reserve(building.size());
        for (auto& [term, plist] : building) {
            fi.terms.push_back(term);
            fi.postings.push_back(std::move(plist));
        }
        fi.finalize();
        idx.fields_.emplace_back(field, std::move(fi));
    }
    return idx;
}

std::vector<std::string> Index::field_names() const {
    std::vector<std::string> names;
    names.reserve(fields_.size());
    for (const auto& [name, fi] : fields_) names.push_back(name);
    return names;
}

const Index::FieldIndex& Index::field_or_throw(const std::string& field) const {
    const auto it = std::lower_bound(
        fields_.begin(), fields_.end(), field,
        [](const auto& entry, const std::string& name) { return entry.first < name; });
    if (it == fields_.end() || it->first != field) {
        throw ConfigError("query references unknown field: " + field);
    }
    return it->second;
}

double Index::term_score(const FieldIndex& fi, std::uint32_t term_ordinal,
                         const Posting& posting) const {
    const double n = static_cast<double>(doc_ids_.size());
    const double df = static_cast<double>(fi.postings[term_ordinal].size());
    const double idf = 1.0 + std::log(n / (df + 1.0));
    return std::sqrt(static_cast<double>(posting.tf)) * idf * idf /
           std::sqrt(static_cast<double>(fi.field_lengths[posting.doc]));
}

Index::ScoredDocs Index::evaluate_exact(const FieldIndex& fi, const std::string& term) const {
    ScoredDocs result;
    const auto it = fi.term_lookup.find(term);
    if (it == fi.term_lookup.end()) return result;
    const std::uint32_t t = it->second;
    result.reserve(fi.postings[t].size());
    for (const Posting& posting : fi.postings[t]) {
        result.emplace_back(posting.doc, term_score(fi, t, posting));
    }
    return result;
}

Index::ScoredDocs Index::evaluate_fuzzy(const FieldIndex& fi, const std::string& field,
                                        const std::string& term, int max_edits) const {
    std::shared_ptr<const std::vector<std::uint32_t>> matched;
    const std::string key = field + '\x1f' + term + '\x1f' + static_cast<char>('0' + max_edits);
    {
        std::lock_guard<std::mutex> lock(fuzzy_cache_->mutex);
        const auto it = fuzzy_cache_->entries.find(key);
        if (it != fuzzy_cache_->entries.end()) matched = it->second;
    }
    if (!matched) {
        auto scanned = std::make_shared<std::vector<std::uint32_t>>(
            fi.packed.scan(utf8::decode(term), max_edits));
        std::lock_guard<std::mutex> lock(fuzzy_cache_->mutex);
        matched = fuzzy_cache_->entries.try_emplace(key, std::move(scanned)).first->second;
    }

    // Ascending term ordinals = lexicographic order; per-doc contributions are
    // summed in that order (the oracle mirrors this).
    std::map<std::uint32_t, double> acc;
    for (const std::uint32_t t : *matched) {
        for (const Posting& posting : fi.postings[t]) {
            acc[posting.doc] += term_score(fi, t, posting);
        }
    }
    return ScoredDocs(acc.begin(), acc.end());
}

Index::ScoredDocs Index::evaluate_phrase(const FieldIndex& fi, const std::string& first,
                                         const std::string& second) const {
    ScoredDocs result;
    const auto it1 = fi.term_lookup.find(first);
    const auto it2 = fi.term_lookup.find(second);
    if (it1 == fi.term_lookup.end() || it2 == fi.term_lookup.end()) return result;
    const std::vector<Posting>& p1 = fi.postings[it1->second];
    const std::vector<Posting>& p2 = fi.postings[it2->second];

    std::vector<std::pair<std::uint32_t, std::uint32_t>> hits;  // (doc, adjacent count)
    std::size_t i = 0, j = 0;
    while (i < p1.size() && j < p2.size()) {
        if (p1[i].doc < p2[j].doc) {
            ++i;
        } else if (p2[j].doc < p1[i].doc) {
            ++j;
        } else {
            std::uint32_t count = 0;
            for (const std::uint32_t pos : p1[i].positions) {
                const auto& pos2 = p2[j].positions;
                if (std::binary_search(pos2.begin(), pos2.end(), pos + 1)) ++count;
            }
            if (count > 0) hits.emplace_back(p1[i].doc, count);
            ++i;
            ++j;
        }
    }
    // Phrase df = number of matched documents, known only after matching.
    const double n = static_cast<double>(doc_ids_.size());
    const double idf = 1.0 + std::log(n / (static_cast<double>(hits.size()) + 1.0));
    result.reserve(hits.size());
    for (const auto& [doc, count] : hits) {
        result.emplace_back(doc, std::sqrt(static_cast<double>(count)) * idf * idf /
                                     std::sqrt(static_cast<double>(fi.field_lengths[doc])));
    }
    return result;
}

Index::ScoredDocs Index::evaluate(const Clause& clause) const {
    switch (clause.kind) {
        case Clause::Kind::ExactTerm:
            return evaluate_exact(field_or_throw(clause.field), clause.term);
        case Clause::Kind::FuzzyTerm:
            return evaluate_fuzzy(field_or_throw(clause.field), clause.field, clause.term,
                                  clause.max_edits);
        case Clause::Kind::Phrase:
            return evaluate_phrase(field_or_throw(clause.field), clause.phrase.first,
                                   clause.phrase.second);
        case Clause::Kind::And: {
            if (clause.children.empty()) throw ConfigError("And clause without children");
            std::vector<ScoredDocs> child_docs;
            child_docs.reserve(clause.children.size());
            for (const Clause& child : clause.children) child_docs.push_back(evaluate(child));
            ScoredDocs result;
            // Walk the first child's docs; a doc survives if present everywhere.
            std::vector<std::size_t> cursors(child_docs.size(), 0);
            for (const auto& [doc, score0] : child_docs[0]) {
                bool everywhere = true;
                double total = score0;
                for (std::size_t c = 1; c < child_docs.size(); ++c) {
                    std::size_t& cur = cursors[c];
                    while (cur < child_docs[c].size() && child_docs[c][cur].first < doc) ++cur;
                    if (cur == child_docs[c].size() || child_docs[c][cur].first != doc) {
                        everywhere = false;
                        break;
                    }
                    total += child_docs[c][cur].second;
                }
                if (everywhere) result.emplace_back(doc, total);
            }
            return result;
        }
        case Clause::Kind::Or: {
            if (clause.children.empty()) throw ConfigError("Or clause without children");
            std::map<std::uint32_t, double> acc;
            for (const Clause& child : clause.children) {
                for (const auto& [doc, score] : evaluate(child)) acc[doc] += score;
            }
            return ScoredDocs(acc.begin(), acc.end());
        }
    }
    throw ConfigError("corrupt clause");
}

std::vector<RankedHit> Index::search(const Clause& query, std::size_t limit) const {
    if (limit < 1) throw ConfigError("search limit must be >= 1");
    const ScoredDocs scored = evaluate(query);
    std::vector<RankedHit> hits;
    hits.reserve(scored.size());
    for (const auto& [doc, score] : scored) {
        hits.push_back(RankedHit{doc_ids_[doc], score});
    }
    std::sort(hits.begin(), hits.end(), [](const RankedHit& a, const RankedHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.record_id < b.record_id;
    });
    if (hits.size() > limit) hits.resize(limit);
    return hits;
}

namespace {

void write_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_str(std::ofstream& out, const std::string& s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t read_u32(std::ifstream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw InputError("truncated index file");
    return v;
}

std::string read_str(std::ifstream& in) {
    const std::uint32_t n = read_u32(in);
    std::string s(n, '\0');
    in.read(s.data(), n);
    if (!in) throw InputError("truncated index file");
    return s;
}

constexpr char kMagic[4] = {'R', 'M', 'I', 'X'};
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

void Index::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write index file " + path);
    out.write(kMagic, 4);
    write_u32(out, kFormatVersion);
    write_u32(out, static_cast<std::uint32_t>(doc_ids_.size()));
    for (const std::string& id : doc_ids_) write_str(out, id);
    write_u32(out, static_cast<std::uint32_t>(fields_.size()));
    for (const auto& [name, fi] : fields_) {
        write_str(out, name);
        write_u32(out, static_cast<std::uint32_t>(fi.terms.size()));
        for (std::size_t t = 0; t < fi.terms.size(); ++t) {
            write_str(out, fi.terms[t]);
            write_u32(out, static_cast<std::uint32_t>(fi.postings[t].size()));
            for (const Posting& posting : fi.postings[t]) {
                write_u32(out, posting.doc);
                write_u32(out, posting.tf);
                write_u32(out, static_cast<std::uint32_t>(posting.positions.size()));
                for (const std::uint32_t pos : posting.positions) write_u32(out, pos);
            }
        }
        for (const std::uint32_t len : fi.field_lengths) write_u32(out, len);
    }
}

Index Index::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open index file " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw InputError(path + " is not an index file");
    }
    const std::uint32_t version = read_u32(in);
    if (version != kFormatVersion) {
        throw InputError("unsupported index format version " + std::to_string(version));
    }
    Index idx;
    const std::uint32_t docs = read_u32(in);
    idx.doc_ids_.reserve(docs);
    for (std::uint32_t d = 0; d < docs; ++d) idx.doc_ids_.push_back(read_str(in));
    const std::uint32_t field_count = read_u32(in);
    for (std::uint32_t f = 0; f < field_count; ++f) {
        std::string name = read_str(in);
        FieldIndex fi;
        const std::uint32_t term_count = read_u32(in);
        fi.terms.reserve(term_count);
        fi.postings.reserve(term_count);
        for (std::uint32_t t = 0; t < term_count; ++t) {
            fi.terms.push_back(read_str(in));
            std::vector<Posting> plist(read_u32(in));
            for (Posting& posting : plist) {
                posting.doc = read_u32(in);
                posting.tf = read_u32(in);
                posting.positions.resize(read_u32(in));
                for (std::uint32_t& pos : posting.positions) pos = read_u32(in);
            }
            fi.postings.push_back(std::move(plist));
        }
        fi.field_lengths.resize(docs);
        for (std::uint32_t& len : fi.field_lengths) len = read_u32(in);
        fi.finalize();
        idx.fields_.emplace_back(std::move(name), std::move(fi));
    }
    return idx;
}

}  // namespace refmatch::index

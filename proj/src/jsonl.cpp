#include "refmatch/jsonl.hpp"

#include <fstream>

#include <json.hpp>

#include "refmatch/error.hpp"

namespace refmatch::jsonl {

using nlohmann::json;

namespace {

json tokens_to_json(const std::vector<SegmentToken>& tokens) {
    json arr = json::array();
    for (const SegmentToken& tok : tokens) {
        arr.push_back({{"text", tok.text}, {"probability", tok.probability}});
    }
    return arr;
}

std::vector<SegmentToken> tokens_from_json(const json& arr) {
    std::vector<SegmentToken> tokens;
    tokens.reserve(arr.size());
    for (const json& item : arr) {
        SegmentToken tok;
        tok.text = item.at("text").get<std::string>();
        tok.probability = item.value("probability", 1.0);
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

// Runs fn over every non-empty line; wraps parse errors with the 1-based line number.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            fn(json::parse(line), lineno);
        } catch (const json::exception& e) {
            throw InputError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

template <typename Fn>
void write_lines(const std::string& path, Fn&& fn) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    fn(out);
}

}  // namespace

std::string reference_to_json(const SegmentedReference& ref) {
    json j;
    j["id"] = ref.id;
    j["raw"] = ref.raw;
    json segs = json::object();
    for (const auto& [kind, tokens] : ref.segments) {
        if (!tokens.empty()) segs[segment_kind_name(kind)] = tokens_to_json(tokens);
    }
    if (!ref.volume_tokens.empty()) segs["volume"] = tokens_to_json(ref.volume_tokens);
    if (!ref.issue_tokens.empty()) segs["issue"] = tokens_to_json(ref.issue_tokens);
    j["segments"] = segs;
    if (ref.extracted_year) j["extracted_year"] = *ref.extracted_year;
    return j.dump();
}

SegmentedReference reference_from_json(const std::string& line) {
    const json j = json::parse(line);
    SegmentedReference ref;
    ref.id = j.at("id").get<std::string>();
    ref.raw = j.at("raw").get<std::string>();
    if (j.contains("segments")) {
        for (const auto& [key, value] : j.at("segments").items()) {
            if (key == "volume") {
                ref.volume_tokens = tokens_from_json(value);
            } else if (key == "issue") {
                ref.issue_tokens = tokens_from_json(value);
            } else if (auto kind = segment_kind_from_name(key)) {
                ref.segments[*kind] = tokens_from_json(value);
            } else {
                throw InputError("unknown segment kind '" + key + "'");
            }
        }
    }
    if (j.contains("extracted_year") && !j.at("extracted_year").is_null()) {
        ref.extracted_year = j.at("extracted_year").get<std::string>();
    }
    return ref;
}

std::string record_to_json(const BibRecord& record) {
    json j;
    j["id"] = record.id;
    json authors = json::array();
    for (const Author& a : record.authors) {
        json ja;
        ja["surname"] = a.surname;
        if (a.given) ja["given"] = *a.given;
        authors.push_back(ja);
    }
    j["authors"] = authors;
    j["title"] = record.title;
    j["source"] = record.source;
    if (record.source_abbrev) j["source_abbrev"] = *record.source_abbrev;
    if (record.year) j["year"] = *record.year;
    if (record.volume) j["volume"] = *record.volume;
    if (record.issue) j["issue"] = *record.issue;
    if (record.pages) {
        json jp;
        jp["start"] = record.pages->start;
        if (record.pages->end) jp["end"] = *record.pages->end;
        j["pages"] = jp;
    }
    return j.dump();
}

BibRecord record_from_json(const std::string& line) {
    const json j = json::parse(line);
    BibRecord record;
    record.id = j.at("id").get<std::string>();
    for (const json& ja : j.value("authors", json::array())) {
        Author a;
        a.surname = ja.at("surname").get<std::string>();
        if (ja.contains("given") && !ja.at("given").is_null()) {
            a.given = ja.at("given").get<std::string>();
        }
        record.authors.push_back(std::move(a));
    }
    record.title = j.value("title", "");
    record.source = j.value("source", "");
    if (j.contains("source_abbrev")) record.source_abbrev = j.at("source_abbrev").get<std::string>();
    if (j.contains("year")) record.year = j.at("year").get<std::string>();
    if (j.contains("volume")) record.volume = j.at("volume").get<std::string>();
    if (j.contains("issue")) record.issue = j.at("issue").get<std::string>();
    if (j.contains("pages")) {
        PageRange pages;
        pages.start = j.at("pages").at("start").get<std::string>();
        if (j.at("pages").contains("end")) pages.end = j.at("pages").at("end").get<std::string>();
        record.pages = std::move(pages);
    }
    return record;
}

std::vector<SegmentedReference> load_references(const std::string& path) {
    std::vector<SegmentedReference> refs;
    for_each_line(path, [&](const json& j, std::size_t) {
        refs.push_back(reference_from_json(j.dump()));
    });
    return refs;
}

std::vector<BibRecord> load_records(const std::string& path) {
    std::vector<BibRecord> records;
    for_each_line(path, [&](const json& j, std::size_t) {
        records.push_back(record_from_json(j.dump()));
    });
    return records;
}

GoldStandard load_gold(const std::string& path) {
    GoldStandard gold;
    for_each_line(path, [&](const json& j, std::size_t lineno) {
        const std::string reference_id = j.at("reference_id").get<std::string>();
        if (gold.entries.count(reference_id)) {
            throw InputError(path + ":" + std::to_string(lineno) +
                             ": duplicate gold entry for " + reference_id);
        }
        std::set<std::string>& ids = gold.entries[reference_id];
        for (const json& rid : j.at("record_ids")) ids.insert(rid.get<std::string>());
    });
    return gold;
}

std::vector<CandidatePair> load_pairs(const std::string& path) {
    std::vector<CandidatePair> pairs;
    for_each_line(path, [&](const json& j, std::size_t) {
        CandidatePair pair;
        pair.reference_id = j.at("reference_id").get<std::string>();
        pair.record_id = j.at("record_id").get<std::string>();
        if (j.contains("features")) pair.features = j.at("features").get<std::vector<double>>();
        if (j.contains("gold_label")) pair.gold_label = j.at("gold_label").get<bool>();
        if (j.contains("predicted_probability")) {
            pair.predicted_probability = j.at("predicted_probability").get<double>();
        }
        pairs.push_back(std::move(pair));
    });
    return pairs;
}

void save_references(const std::vector<SegmentedReference>& refs, const std::string& path) {
    write_lines(path, [&](std::ofstream& out) {
        for (const SegmentedReference& ref : refs) out << reference_to_json(ref) << '\n';
    });
}

void save_records(const std::vector<BibRecord>& records, const std::string& path) {
    write_lines(path, [&](std::ofstream& out) {
        for (const BibRecord& record : records) out << record_to_json(record) << '\n';
    });
}

void save_gold(const GoldStandard& gold, const std::string& path) {
    write_lines(path, [&](std::ofstream& out) {
        for (const auto& [reference_id, record_ids] : gold.entries) {
            json j;
            j["reference_id"] = reference_id;
            j["record_ids"] = record_ids;
            out << j.dump() << '\n';
        }
    });
}

void save_pairs(const std::vector<CandidatePair>& pairs, const std::string& path) {
    write_lines(path, [&](std::ofstream& out) {
        for (const CandidatePair& pair : pairs) {
            json j;
            j["reference_id"] = pair.reference_id;
            j["record_id"] = pair.record_id;
            if (!pair.features.empty()) j["features"] = pair.features;
            if (pair.gold_label) j["gold_label"] = *pair.gold_label;
            if (pair.predicted_probability) j["predicted_probability"] = *pair.predicted_probability;
            out << j.dump() << '\n';
        }
    });
}

}  // namespace refmatch::jsonl

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "refmatch/model.hpp"

// JSONL external formats.
//
// references.jsonl  {"id", "raw", "segments": {kind: [{"text","probability"}...]},
//                    "extracted_year"?}   kind keys: author title year page number
//                    volume issue source (volume/issue are pre-merge native labels)
// records.jsonl     {"id", "authors":[{"surname","given"?}...], "title", "source",
//                    "source_abbrev"?, "year"?, "volume"?, "issue"?,
//                    "pages"?:{"start","end"?}}
// gold.jsonl        {"reference_id", "record_ids":[...]}  empty array = no match
// candidates.jsonl  {"reference_id", "record_id"}
// pairs.jsonl       {"reference_id", "record_id", "features":[...], "gold_label"?}

namespace refmatch::jsonl {

std::vector<SegmentedReference> load_references(const std::string& path);
std::vector<BibRecord> load_records(const std::string& path);
GoldStandard load_gold(const std::string& path);
std::vector<CandidatePair> load_pairs(const std::string& path);

void save_references(const std::vector<SegmentedReference>& refs, const std::string& path);
void save_records(const std::vector<BibRecord>& records, const std::string& path);
void save_gold(const GoldStandard& gold, const std::string& path);
void save_pairs(const std::vector<CandidatePair>& pairs, const std::string& path);

std::string reference_to_json(const SegmentedReference& ref);
std::string record_to_json(const BibRecord& record);
SegmentedReference reference_from_json(const std::string& line);
BibRecord record_from_json(const std::string& line);

}  // namespace refmatch::jsonl

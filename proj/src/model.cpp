#include "refmatch/model.hpp"

#include <cctype>
#include <cmath>
#include <unordered_set>

namespace refmatch {

const char* segment_kind_name(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::Author: return "author";
        case SegmentKind::Title: return "title";
        case SegmentKind::Year: return "year";
        case SegmentKind::Page: return "page";
        case SegmentKind::Number: return "number";
        case SegmentKind::Source: return "source";
    }
    return "?";
}

std::optional<SegmentKind> segment_kind_from_name(const std::string& name) {
    for (SegmentKind kind : kAllSegmentKinds) {
        if (name == segment_kind_name(kind)) return kind;
    }
    return std::nullopt;
}

namespace {

bool is_four_digit(const std::string& s) {
    if (s.size() != 4) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool has_edge_whitespace(const std::string& s) {
    if (s.empty()) return false;
    return std::isspace(static_cast<unsigned char>(s.front())) ||
           std::isspace(static_cast<unsigned char>(s.back()));
}

void check_tokens(const std::vector<SegmentToken>& tokens, const std::string& where,
                  std::vector<std::string>& violations) {
    for (const SegmentToken& tok : tokens) {
        if (tok.text.empty()) {
            violations.push_back(where + ": empty segment token");
        } else if (has_edge_whitespace(tok.text)) {
            violations.push_back(where + ": token '" + tok.text + "' has edge whitespace");
        }
        if (!(tok.probability >= 0.0 && tok.probability <= 1.0) || std::isnan(tok.probability)) {
            violations.push_back(where + ": probability out of [0,1]");
        }
    }
}

}  // namespace

ValidationReport validate_corpus(const std::vector<SegmentedReference>& references,
                                 const std::vector<BibRecord>& records,
                                 const GoldStandard& gold) {
    ValidationReport report;
    report.reference_count = references.size();
    report.record_count = records.size();
    report.gold_entry_count = gold.entries.size();

    std::unordered_set<std::string> reference_ids;
    for (const SegmentedReference& ref : references) {
        if (!reference_ids.insert(ref.id).second) {
            report.violations.push_back("duplicate reference id: " + ref.id);
        }
        if (ref.raw.empty()) {
            report.violations.push_back("reference " + ref.id + ": empty raw string");
        }
        for (const auto& [kind, tokens] : ref.segments) {
            check_tokens(tokens, "reference " + ref.id + " " + segment_kind_name(kind),
                         report.violations);
        }
        check_tokens(ref.volume_tokens, "reference " + ref.id + " volume", report.violations);
        check_tokens(ref.issue_tokens, "reference " + ref.id + " issue", report.violations);
        if (ref.extracted_year && !is_four_digit(*ref.extracted_year)) {
            report.violations.push_back("reference " + ref.id + ": extracted_year not 4 digits");
        }
    }

    std::unordered_set<std::string> record_ids;
    for (const BibRecord& record : records) {
        if (!record_ids.insert(record.id).second) {
            report.violations.push_back("duplicate record id: " + record.id);
        }
        if (record.year && !is_four_digit(*record.year)) {
            report.violations.push_back("record " + record.id + ": year not 4 digits");
        }
    }

    for (const auto& [reference_id, matched] : gold.entries) {
        if (!reference_ids.count(reference_id)) {
            report.violations.push_back("gold entry for unknown reference: " + reference_id);
        }
        for (const std::string& record_id : matched) {
            if (!record_ids.count(record_id)) {
                report.violations.push_back("dangling gold record id: " + record_id +
                                            " (reference " + reference_id + ")");
            }
        }
    }
    return report;
}

}  // namespace refmatch

#pragma once

// Small handcrafted corpus pieces shared by the unit tests.

#include <string>
#include <vector>

#include "refmatch/model.hpp"

namespace fixtures {

using refmatch::Author;
using refmatch::BibRecord;
using refmatch::PageRange;
using refmatch::SegmentedReference;
using refmatch::SegmentKind;
using refmatch::SegmentToken;

inline BibRecord record(std::string id, std::vector<Author> authors, std::string title,
                        std::string source, std::string year, std::string volume,
                        std::string issue, std::string page_start, std::string page_end) {
    BibRecord r;
    r.id = std::move(id);
    r.authors = std::move(authors);
    r.title = std::move(title);
    r.source = std::move(source);
    r.year = std::move(year);
    r.volume = std::move(volume);
    r.issue = std::move(issue);
    r.pages = PageRange{std::move(page_start), std::move(page_end)};
    return r;
}

inline std::vector<BibRecord> small_records() {
    std::vector<BibRecord> records;
    records.push_back(record("b01", {{"Müller", "Anna"}, {"Schmidt", "Karl"}},
                             "Data Mining Concepts and Methods", "Zeitschrift für Datenanalyse",
                             "2001", "12", "3", "101", "125"));
    records.push_back(record("b02", {{"Meyer", "Hans"}},
                             "Social Structure and Mobility Patterns",
                             "Zeitschrift für Soziologie", "2001", "30", "2", "55", "80"));
    records.push_back(record("b03", {{"Müller", "Anna"}},
                             "Mining Social Data for Structure", "Datenanalyse Journal", "1999",
                             "8", "1", "12", "30"));
    records.push_back(record("b04", {{"Weber", "Max"}, {"Meier", "Eva"}},
                             "Economic Action and Social Order", "Archiv für Wirtschaft", "1988",
                             "3", "4", "201", "240"));
    records.push_back(record("b05", {{"Schmidt", "Karl"}},
                             "Concepts of Mobility in Modern Societies",
                             "Zeitschrift für Soziologie", "2001", "30", "2", "81", "99"));
    records[1].source_abbrev = "Z. f. Soziol.";
    records[4].source_abbrev = "Z. f. Soziol.";
    return records;
}

inline std::vector<SegmentToken> toks(std::initializer_list<std::pair<const char*, double>> list) {
    std::vector<SegmentToken> tokens;
    for (const auto& [text, p] : list) tokens.push_back(SegmentToken{text, p});
    return tokens;
}

// A reference that cites b01 cleanly.
inline SegmentedReference clean_reference() {
    SegmentedReference ref;
    ref.id = "q1";
    ref.raw = "Müller, A./Schmidt, K. (2001): Data Mining Concepts and Methods. "
              "In: Zeitschrift für Datenanalyse 12 (3), S. 101-125.";
    ref.segments[SegmentKind::Author] =
        toks({{"Müller,", 0.95}, {"A.", 0.9}, {"Schmidt,", 0.92}, {"K.", 0.9}});
    ref.segments[SegmentKind::Title] = toks(
        {{"Data", 0.9}, {"Mining", 0.91}, {"Concepts", 0.93}, {"and", 0.9}, {"Methods", 0.92}});
    ref.segments[SegmentKind::Year] = toks({{"2001", 0.97}});
    ref.segments[SegmentKind::Page] = toks({{"101-125", 0.9}});
    ref.volume_tokens = toks({{"12", 0.88}});
    ref.issue_tokens = toks({{"3", 0.85}});
    ref.segments[SegmentKind::Source] =
        toks({{"Zeitschrift", 0.9}, {"für", 0.9}, {"Datenanalyse", 0.9}});
    return ref;
}

}  // namespace fixtures

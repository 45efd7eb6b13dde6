#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "refmatch/features.hpp"
#include "refmatch/strsim.hpp"
#include "refmatch/textnorm.hpp"
#include "support/fixtures.hpp"

using namespace refmatch;
using namespace refmatch::features;

namespace {

std::size_t index_of(const std::string& name, GroupSet groups = {}) {
    const auto schema = schema_for(groups);
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (schema[i].name == name) return i;
    }
    REQUIRE_MESSAGE(false, "feature not found: ", name);
    return 0;
}

// identical reference/record content with certainty 1.0
std::pair<SegmentedReference, BibRecord> identity_pair() {
    BibRecord record = fixtures::small_records()[0];
    record.source_abbrev = "Z. f. Datenanal.";
    SegmentedReference ref;
    ref.id = "ident";
    ref.raw = "Müller, A./Schmidt, K. (2001): Data Mining Concepts and Methods. "
              "In: Z. f. Datenanal. Zeitschrift für Datenanalyse 12 (3), S. 101-125.";
    ref.segments[SegmentKind::Author] =
        fixtures::toks({{"Müller,", 1.0}, {"A.", 1.0}, {"Schmidt,", 1.0}, {"K.", 1.0}});
    ref.segments[SegmentKind::Title] = fixtures::toks(
        {{"Data", 1.0}, {"Mining", 1.0}, {"Concepts", 1.0}, {"and", 1.0}, {"Methods", 1.0}});
    ref.segments[SegmentKind::Year] = fixtures::toks({{"2001", 1.0}});
    ref.segments[SegmentKind::Page] = fixtures::toks({{"101-125", 1.0}});
    ref.segments[SegmentKind::Number] = fixtures::toks({{"12", 1.0}, {"3", 1.0}});
    ref.segments[SegmentKind::Source] =
        fixtures::toks({{"Zeitschrift", 1.0}, {"für", 1.0}, {"Datenanalyse", 1.0}});
    return {textnorm::preprocess(ref), record};
}

}  // namespace

TEST_CASE("schema layout is frozen") {
    CHECK(full_schema().size() == 22);
    CHECK(schema_for({true, true, true}).size() == 22);
    CHECK(schema_for({true, false, false}).size() == 11);
    CHECK(schema_for({false, true, false}).size() == 7);
    CHECK(schema_for({false, false, true}).size() == 4);
    CHECK(schema_version({true, true, true}) == "fv1:APB");
    CHECK(schema_version({true, false, true}) == "fv1:AB");
    // order: all A, then all P, then all B
    const auto phase = [](char g) { return g == 'A' ? 0 : (g == 'P' ? 1 : 2); };
    int last_phase = 0;
    for (const FeatureDef& def : full_schema()) {
        CHECK(phase(def.group) >= last_phase);
        last_phase = phase(def.group);
    }
}

TEST_CASE("identity pair scores ones everywhere") {
    const auto [ref, record] = identity_pair();
    const auto vec = extract_features(ref, record, {});
    REQUIRE(vec.size() == 22);
    for (std::size_t i = 0; i < vec.size(); ++i) {
        CAPTURE(full_schema()[i].name);
        CHECK(vec[i] >= 0.0);
    }
    for (const char* name : {"author_surname_lev", "author_surname_phonetic_lev",
                             "author_surname_jaccard", "title_jaccard", "title_lev_char",
                             "title_lev_token", "source_jaccard", "source_lev_char", "year_match",
                             "pages_jaccard", "number_jaccard", "first_author_surname_prob",
                             "author_weighted_jaccard", "title_weighted_jaccard",
                             "source_weighted_jaccard", "year_prob", "pages_prob", "number_prob",
                             "source_abbrev_in_raw", "raw_year_match", "title_bigram_overlap"}) {
        CHECK_MESSAGE(vec[index_of(name)] == 1.0, name);
    }
    // full record title occurs verbatim in raw
    CHECK(vec[index_of("title_lcs_in_raw")] == 1.0);
}

TEST_CASE("worked probability example: weighted author jaccard 0.425") {
    SegmentedReference ref;
    ref.id = "w";
    ref.raw = "X and Y (2000): something.";
    ref.segments[SegmentKind::Author] =
        fixtures::toks({{"Xaver,", 0.8}, {"Ypsilanti,", 0.9}});
    BibRecord record;
    record.id = "rw";
    record.authors = {{"Xaver", {}}, {"Ypsilanti", {}}, {"Unrelated", {}}, {"Vierte", {}}};
    record.title = "something";
    record.source = "irrelevant";
    const auto vec = extract_features(textnorm::preprocess(ref), record, {});
    CHECK(vec[index_of("author_weighted_jaccard")] == doctest::Approx(0.425));
    CHECK(vec[index_of("author_surname_jaccard")] == doctest::Approx(0.5));
}

TEST_CASE("group B ignores segments entirely") {
    const auto [ref, record] = identity_pair();
    SegmentedReference stripped = ref;
    stripped.segments.clear();  // raw untouched
    const GroupSet b_only{false, false, true};
    CHECK(extract_features(ref, record, b_only) == extract_features(stripped, record, b_only));

    SegmentedReference reweighted = ref;
    for (auto& [kind, tokens] : reweighted.segments) {
        for (auto& tok : tokens) tok.probability = 0.01;
    }
    CHECK(extract_features(ref, record, b_only) ==
          extract_features(reweighted, record, b_only));
}

TEST_CASE("unit probabilities make weighted features equal unweighted") {
    const auto [ref, record] = identity_pair();
    const auto vec = extract_features(ref, record, {});
    CHECK(vec[index_of("author_weighted_jaccard")] == vec[index_of("author_surname_jaccard")]);
    CHECK(vec[index_of("title_weighted_jaccard")] == vec[index_of("title_jaccard")]);
    CHECK(vec[index_of("source_weighted_jaccard")] == vec[index_of("source_jaccard")]);
}

TEST_CASE("missing source segment produces sentinels but group B still works") {
    auto [ref, record] = identity_pair();
    ref.segments.erase(SegmentKind::Source);
    const auto vec = extract_features(ref, record, {});
    CHECK(vec[index_of("source_jaccard")] == kMissing);
    CHECK(vec[index_of("source_lev_char")] == kMissing);
    CHECK(vec[index_of("source_weighted_jaccard")] == kMissing);
    CHECK(vec[index_of("source_abbrev_in_raw")] == 1.0);  // read from raw, not segments
}

TEST_CASE("record without abbreviation yields sentinel indicator") {
    auto [ref, record] = identity_pair();
    record.source_abbrev.reset();
    const auto vec = extract_features(ref, record, {});
    CHECK(vec[index_of("source_abbrev_in_raw")] == kMissing);
}

TEST_CASE("hand-computed vector for a constructed mismatching pair") {
    SegmentedReference ref;
    ref.id = "h";
    ref.raw = "Meyer, H. (1999): Social Order. In: Altes Journal 7, S. 10-20.";
    ref.segments[SegmentKind::Author] = fixtures::toks({{"Meyer,", 0.8}, {"H.", 0.7}});
    ref.segments[SegmentKind::Title] = fixtures::toks({{"Social", 0.9}, {"Order", 0.6}});
    ref.segments[SegmentKind::Year] = fixtures::toks({{"1999", 0.5}});
    const SegmentedReference prepared = textnorm::preprocess(ref);

    BibRecord record;
    record.id = "rh";
    record.authors = {{"Meier", "Eva"}};
    record.title = "Social Action";
    record.source = "Neues Journal";
    record.year = "1999";

    const auto vec = extract_features(prepared, record, {});
    // author: meyer vs meier lev sim = 1 - 1/5; phonetic codes 67 vs 67 -> 1.0
    CHECK(vec[index_of("author_surname_lev")] == doctest::Approx(0.8));
    CHECK(vec[index_of("author_surname_phonetic_lev")] == 1.0);
    CHECK(vec[index_of("author_surname_jaccard")] == 0.0);
    // title tokens {social, order} vs {social, action}: jaccard 1/3
    CHECK(vec[index_of("title_jaccard")] == doctest::Approx(1.0 / 3.0));
    // char level: "social order" vs "social action": lev 4 over max len 13
    CHECK(vec[index_of("title_lev_char")] ==
          doctest::Approx(strsim::levenshtein_similarity("social order", "social action")));
    // token level: one substitution over two tokens
    CHECK(vec[index_of("title_lev_token")] == doctest::Approx(0.5));
    CHECK(vec[index_of("source_jaccard")] == kMissing);  // no source segment
    CHECK(vec[index_of("year_match")] == 1.0);
    CHECK(vec[index_of("pages_jaccard")] == kMissing);   // no page segment
    CHECK(vec[index_of("number_jaccard")] == kMissing);
    CHECK(vec[index_of("first_author_surname_prob")] == doctest::Approx(0.8));
    // weighted author: intersection empty -> 0 over union of 2
    CHECK(vec[index_of("author_weighted_jaccard")] == 0.0);
    // weighted title: social (0.9) over union of 3
    CHECK(vec[index_of("title_weighted_jaccard")] == doctest::Approx(0.9 / 3.0));
    CHECK(vec[index_of("year_prob")] == doctest::Approx(0.5));
    CHECK(vec[index_of("pages_prob")] == kMissing);
    // B group: lcs("Social Action", raw) = "social " + a? -> compute: "social "
    // matches "Social Order" prefix "Social " = 7 chars; normalize by 13
    CHECK(vec[index_of("title_lcs_in_raw")] == doctest::Approx(7.0 / 13.0));
    CHECK(vec[index_of("source_abbrev_in_raw")] == kMissing);
    CHECK(vec[index_of("raw_year_match")] == 1.0);
    // record title bigrams {social action}: not present in raw bigrams
    CHECK(vec[index_of("title_bigram_overlap")] == 0.0);
}

TEST_CASE("feature extraction is deterministic and total") {
    const auto [ref, record] = identity_pair();
    const auto a = extract_features(ref, record, {});
    const auto b = extract_features(ref, record, {});
    CHECK(a == b);
    for (const double v : a) CHECK(std::isfinite(v));

    // stripped-down inputs never crash
    SegmentedReference bare;
    bare.id = "b";
    bare.raw = "x";
    BibRecord empty_record;
    empty_record.id = "r";
    const auto vec = extract_features(textnorm::preprocess(bare), empty_record, {});
    CHECK(vec.size() == 22);
    for (const double v : vec) CHECK((v == kMissing || std::isfinite(v)));
}

#include <doctest.h>

#include <string>
#include <vector>

#include "refmatch/jsonl.hpp"
#include "refmatch/model.hpp"
#include "support/fixtures.hpp"

using namespace refmatch;

TEST_CASE("segment kind names round-trip") {
    for (const SegmentKind kind : kAllSegmentKinds) {
        CHECK(segment_kind_from_name(segment_kind_name(kind)) == kind);
    }
    CHECK_FALSE(segment_kind_from_name("volume").has_value());  // native label, not a kind
}

TEST_CASE("reference JSON round-trip preserves structure") {
    const SegmentedReference ref = fixtures::clean_reference();
    const SegmentedReference reparsed = jsonl::reference_from_json(jsonl::reference_to_json(ref));
    CHECK(reparsed == ref);
}

TEST_CASE("record JSON round-trip preserves structure") {
    for (const BibRecord& record : fixtures::small_records()) {
        CHECK(jsonl::record_from_json(jsonl::record_to_json(record)) == record);
    }
    BibRecord minimal;
    minimal.id = "m1";
    minimal.title = "Nur ein Titel";
    CHECK(jsonl::record_from_json(jsonl::record_to_json(minimal)) == minimal);
}

TEST_CASE("validate_corpus on a well-formed corpus") {
    const auto records = fixtures::small_records();
    const std::vector<SegmentedReference> refs = {fixtures::clean_reference()};
    GoldStandard gold;
    gold.entries["q1"] = {"b01"};
    const auto report = validate_corpus(refs, records, gold);
    CHECK(report.reference_count == 1);
    CHECK(report.record_count == records.size());
    CHECK(report.gold_entry_count == 1);
    CHECK(report.ok());
}

TEST_CASE("validate_corpus on empty inputs") {
    const auto report = validate_corpus({}, {}, {});
    CHECK(report.reference_count == 0);
    CHECK(report.record_count == 0);
    CHECK(report.gold_entry_count == 0);
    CHECK(report.ok());
}

TEST_CASE("validate_corpus reports constructed violations") {
    auto records = fixtures::small_records();
    std::vector<SegmentedReference> refs = {fixtures::clean_reference()};

    SUBCASE("dangling gold id") {
        GoldStandard gold;
        gold.entries["q1"] = {"nope"};
        const auto report = validate_corpus(refs, records, gold);
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].find("dangling gold record id") != std::string::npos);
    }
    SUBCASE("duplicate record id") {
        records.push_back(records.front());
        const auto report = validate_corpus(refs, records, {});
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].find("duplicate record id") != std::string::npos);
    }
    SUBCASE("duplicate reference id") {
        refs.push_back(refs.front());
        const auto report = validate_corpus(refs, records, {});
        CHECK(!report.ok());
    }
    SUBCASE("probability out of range") {
        refs[0].segments[SegmentKind::Title][0].probability = 1.5;
        const auto report = validate_corpus(refs, records, {});
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].find("probability") != std::string::npos);
    }
    SUBCASE("bad year on record") {
        records[0].year = "19x9";
        const auto report = validate_corpus(refs, records, {});
        CHECK(!report.ok());
    }
    SUBCASE("gold for unknown reference") {
        GoldStandard gold;
        gold.entries["ghost"] = {};
        const auto report = validate_corpus(refs, records, gold);
        CHECK(!report.ok());
    }
}

TEST_CASE("gold lookup treats duplicates as matches") {
    GoldStandard gold;
    gold.entries["q1"] = {"b01", "b99"};
    CHECK(gold.is_match("q1", "b01"));
    CHECK(gold.is_match("q1", "b99"));
    CHECK_FALSE(gold.is_match("q1", "b02"));
    CHECK_FALSE(gold.is_match("q2", "b01"));
}

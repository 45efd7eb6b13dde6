#pragma once

#include <cstdint>
#include <vector>

#include "refmatch/model.hpp"

namespace refmatch::corpusgen {

// Knobs for the synthetic benchmark corpus. Defaults reproduce the published
// gold-standard shape: 816 references against 18,590 records (including
// duplicate entries), 517 references with at least one match, sub-percent
// blocking-miss and zero-candidate tails, CRF-style token probabilities that
// correlate with label correctness, and segment noise concentrated in titles.
struct CorpusSpec {
    std::uint64_t seed = 0x5eed2019;

    std::size_t record_count = 18590;
    std::size_t duplicate_count = 1000;
    std::size_t reference_count = 816;
    std::size_t matchable_count = 517;
    std::size_t degenerate_count = 7;     // references yielding zero candidates
    std::size_t catastrophic_count = 10;  // matchable but expected to fail blocking
    std::size_t journal_count = 120;

    // segmentation quality tiers (rest of the mass is "mangled")
    double clean_fraction = 0.55;
    double medium_fraction = 0.25;

    // mangled-tier title corruption
    double title_keep_lo = 0.40;
    double title_keep_hi = 0.75;
    int pollution_min = 2;
    int pollution_max = 4;

    // segment presence rates on references
    double pages_present = 0.60;
    double number_present = 0.75;
    double source_present = 0.85;

    // unmatchable references reuse journal authors with this probability
    double phantom_author_reuse = 0.70;

    // raw-string noise
    double raw_title_typo = 0.08;
    double raw_abbrev_source = 0.12;

    // token probability model
    double prob_correct_mean = 0.92;
    double prob_correct_sd = 0.05;
    double prob_wrong_mean = 0.35;
    double prob_wrong_sd = 0.10;
};

struct Corpus {
    std::vector<BibRecord> records;
    std::vector<SegmentedReference> references;
    GoldStandard gold;
};

Corpus generate_corpus(const CorpusSpec& spec = {});

}  // namespace refmatch::corpusgen

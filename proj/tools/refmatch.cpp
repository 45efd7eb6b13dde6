#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "refmatch/blocking.hpp"
#include "refmatch/classify.hpp"
#include "refmatch/config.hpp"
#include "refmatch/corpusgen.hpp"
#include "refmatch/error.hpp"
#include "refmatch/eval.hpp"
#include "refmatch/features.hpp"
#include "refmatch/index.hpp"
#include "refmatch/jsonl.hpp"
#include "refmatch/parallel.hpp"
#include "refmatch/simd/edit_distance.hpp"
#include "refmatch/textnorm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace refmatch;

namespace {

struct CliOverrides {
    std::string config_path;
    std::optional<std::string> records, references, gold, index_path, model, out_dir;
    std::optional<std::string> strategy, groups, classifier, combinations;
    std::optional<int> cutoff;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
};

config::PipelineConfig resolve_config(const CliOverrides& cli) {
    config::PipelineConfig cfg;
    if (!cli.config_path.empty()) cfg = config::load_config(cli.config_path);
    if (cli.records) cfg.paths.records = *cli.records;
    if (cli.references) cfg.paths.references = *cli.references;
    if (cli.gold) cfg.paths.gold = *cli.gold;
    if (cli.index_path) cfg.paths.index = *cli.index_path;
    if (cli.model) cfg.paths.model = *cli.model;
    if (cli.out_dir) cfg.paths.out_dir = *cli.out_dir;
    if (cli.cutoff) {
        if (*cli.cutoff < 1) throw ConfigError("cutoff must be >= 1");
        cfg.blocking.cutoff = *cli.cutoff;
    }
    if (cli.strategy) {
        const auto strategy = blocking::strategy_from_name(*cli.strategy);
        if (!strategy) throw ConfigError("unknown strategy '" + *cli.strategy + "'");
        cfg.blocking.strategy = *strategy;
    }
    if (cli.groups) {
        std::vector<std::string> names;
        for (const char c : *cli.groups) {
            if (c == ',') continue;
            names.emplace_back(1, c);
        }
        cfg.feature_groups = features::GroupSet::parse(names);
        cfg.classifier.schema_version = features::schema_version(cfg.feature_groups);
    }
    if (cli.classifier) {
        const auto kind = classify::classifier_kind_from_name(*cli.classifier);
        if (!kind) throw ConfigError("unknown classifier '" + *cli.classifier + "'");
        cfg.classifier.kind = *kind;
    }
    if (cli.seed) cfg.classifier.seed = *cli.seed;
    if (cli.workers) cfg.workers = *cli.workers;
    if (cli.combinations) {
        std::ifstream in(*cli.combinations);
        if (!in) throw ConfigError("cannot open combinations file " + *cli.combinations);
        json j;
        in >> j;
        cfg.blocking.enabled_combinations.clear();
        for (const json& entry : j) {
            const auto combo =
                blocking::SegmentCombination::parse(entry.get<std::vector<std::string>>());
            if (!combo) throw ConfigError("bad combination entry in " + *cli.combinations);
            cfg.blocking.enabled_combinations.insert(*combo);
        }
    }
    return cfg;
}

void require_path(const std::string& path, const std::string& what) {
    if (path.empty()) throw ConfigError("missing path for " + what);
    if (!fs::exists(path)) throw InputError(what + " not found: " + path);
}

std::vector<SegmentedReference> load_preprocessed_references(const config::PipelineConfig& cfg) {
    require_path(cfg.paths.references, "references file");
    std::vector<SegmentedReference> refs = jsonl::load_references(cfg.paths.references);
    for (SegmentedReference& ref : refs) {
        ref = textnorm::preprocess(ref, cfg.blocking.year_window);
    }
    return refs;
}

json combos_to_json(const std::set<blocking::SegmentCombination>& combos) {
    json out = json::array();
    for (const auto& combo : combos) {
        json names = json::array();
        for (const SegmentKind kind : combo.kinds()) names.push_back(segment_kind_name(kind));
        out.push_back(std::move(names));
    }
    return out;
}

int cmd_index(const config::PipelineConfig& cfg) {
    require_path(cfg.paths.records, "records file");
    if (cfg.paths.index.empty()) throw ConfigError("paths.index is required for 'index'");
    const std::vector<BibRecord> records = jsonl::load_records(cfg.paths.records);
    if (records.empty()) {
        std::cerr << "warning: records file is empty; building an empty index\n";
    }
    const index::Index idx = index::Index::build(records);
    idx.save(cfg.paths.index);
    std::cout << records.size() << " records indexed across " << idx.field_names().size()
              << " fields (simd lane: " << simd::lane_name(simd::active_lane()) << ")\n"
              << "index written to " << cfg.paths.index << "\n";
    return 0;
}

int cmd_block(const config::PipelineConfig& cfg) {
    require_path(cfg.paths.index, "index file");
    const index::Index idx = index::Index::load(cfg.paths.index);
    const std::vector<SegmentedReference> refs = load_preprocessed_references(cfg);

    std::vector<std::set<std::string>> candidates(refs.size());
    parallel_for(refs.size(), worker_count(cfg.workers), [&](std::size_t i) {
        candidates[i] = blocking::retrieve_candidates(refs[i], idx, cfg.blocking);
    });

    fs::create_directories(cfg.paths.out_dir);
    const std::string pairs_path = cfg.paths.out_dir + "/candidates.jsonl";
    std::ofstream out(pairs_path);
    if (!out) throw InputError("cannot write " + pairs_path);
    std::size_t total = 0;
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        for (const std::string& record_id : candidates[i]) {
            json j;
            j["reference_id"] = refs[i].id;
            j["record_id"] = record_id;
            out << j.dump() << '\n';
        }
        total += candidates[i].size();
        if (!candidates[i].empty()) sizes.push_back(candidates[i].size());
    }

    double mean = 0.0, sd = 0.0;
    std::size_t min_c = 0, max_c = 0;
    if (!sizes.empty()) {
        min_c = *std::min_element(sizes.begin(), sizes.end());
        max_c = *std::max_element(sizes.begin(), sizes.end());
        mean = static_cast<double>(total) / static_cast<double>(sizes.size());
        for (const std::size_t s : sizes) {
            sd += (static_cast<double>(s) - mean) * (static_cast<double>(s) - mean);
        }
        sd = std::sqrt(sd / static_cast<double>(sizes.size()));
    }
    json summary;
    summary["config_fingerprint"] = config::fingerprint(cfg);
    summary["strategy"] = blocking::strategy_name(cfg.blocking.strategy);
    summary["cutoff"] = cfg.blocking.cutoff;
    summary["pair_count"] = total;
    summary["references"] = refs.size();
    summary["references_with_candidates"] = sizes.size();
    summary["candidates_min"] = min_c;
    summary["candidates_mean"] = mean;
    summary["candidates_sd"] = sd;
    summary["candidates_max"] = max_c;
    std::ofstream sum_out(cfg.paths.out_dir + "/blocking_summary.json");
    sum_out << summary.dump(2) << '\n';

    std::cout << total << " candidate pairs for " << refs.size() << " references (min " << min_c
              << ", mean " << mean << ", sd " << sd << ", max " << max_c << ")\n"
              << "candidates written to " << pairs_path << "\n";
    return 0;
}

int cmd_featurize(const config::PipelineConfig& cfg) {
    require_path(cfg.paths.records, "records file");
    const std::string candidates_path = cfg.paths.out_dir + "/candidates.jsonl";
    require_path(candidates_path, "candidates file");
    const std::vector<SegmentedReference> refs = load_preprocessed_references(cfg);
    const std::vector<BibRecord> records = jsonl::load_records(cfg.paths.records);

    std::map<std::string, const SegmentedReference*> ref_by_id;
    for (const SegmentedReference& ref : refs) ref_by_id[ref.id] = &ref;
    std::map<std::string, const BibRecord*> record_by_id;
    for (const BibRecord& record : records) record_by_id[record.id] = &record;

    GoldStandard gold;
    const bool labeled = !cfg.paths.gold.empty();
    if (labeled) {
        require_path(cfg.paths.gold, "gold file");
        gold = jsonl::load_gold(cfg.paths.gold);
    }

    std::vector<CandidatePair> pairs = jsonl::load_pairs(candidates_path);
    std::sort(pairs.begin(), pairs.end(), [](const CandidatePair& a, const CandidatePair& b) {
        if (a.reference_id != b.reference_id) return a.reference_id < b.reference_id;
        return a.record_id < b.record_id;
    });
    parallel_for(pairs.size(), worker_count(cfg.workers), [&](std::size_t i) {
        CandidatePair& pair = pairs[i];
        const auto ref_it = ref_by_id.find(pair.reference_id);
        const auto rec_it = record_by_id.find(pair.record_id);
        if (ref_it == ref_by_id.end() || rec_it == record_by_id.end()) {
            throw InputError("candidate pair references unknown id (" + pair.reference_id + ", " +
                             pair.record_id + ")");
        }
        pair.features =
            features::extract_features(*ref_it->second, *rec_it->second, cfg.feature_groups);
        if (labeled) pair.gold_label = gold.is_match(pair.reference_id, pair.record_id);
    });

    fs::create_directories(cfg.paths.out_dir);
    jsonl::save_pairs(pairs, cfg.paths.out_dir + "/pairs.jsonl");

    json manifest;
    manifest["schema_version"] = features::schema_version(cfg.feature_groups);
    manifest["config_fingerprint"] = config::fingerprint(cfg);
    json defs = json::array();
    const auto schema = features::schema_for(cfg.feature_groups);
    for (std::size_t i = 0; i < schema.size(); ++i) {
        defs.push_back({{"name", schema[i].name},
                        {"group", std::string(1, schema[i].group)},
                        {"index", i}});
    }
    manifest["features"] = std::move(defs);
    std::ofstream manifest_out(cfg.paths.out_dir + "/feature_schema.json");
    manifest_out << manifest.dump(2) << '\n';

    std::cout << pairs.size() << " pairs featurized (" << schema.size() << " features, schema "
              << features::schema_version(cfg.feature_groups) << ")\n"
              << "pairs written to " << cfg.paths.out_dir << "/pairs.jsonl\n";
    return 0;
}

int cmd_train(const config::PipelineConfig& cfg) {
    const std::string pairs_path = cfg.paths.out_dir + "/pairs.jsonl";
    require_path(pairs_path, "featurized pairs file");
    if (cfg.paths.model.empty()) throw ConfigError("paths.model is required for 'train'");
    const std::vector<CandidatePair> pairs = jsonl::load_pairs(pairs_path);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    std::vector<std::string> ids;
    for (const CandidatePair& pair : pairs) {
        if (!pair.gold_label) {
            throw InputError("training needs labeled pairs; run featurize with a gold file");
        }
        x.push_back(pair.features);
        y.push_back(*pair.gold_label ? 1 : 0);
        ids.push_back(pair.reference_id + "/" + pair.record_id);
    }
    classify::TrainOptions options = cfg.classifier;
    options.schema_version = features::schema_version(cfg.feature_groups);
    const classify::Model model = classify::Model::train(x, y, options, &ids);
    model.save(cfg.paths.model);
    std::cout << "trained " << classify::classifier_kind_name(options.kind) << " on " << x.size()
              << " pairs; model written to " << cfg.paths.model << "\n";
    return 0;
}

int cmd_match(const config::PipelineConfig& cfg) {
    const std::string pairs_path = cfg.paths.out_dir + "/pairs.jsonl";
    require_path(pairs_path, "featurized pairs file");
    require_path(cfg.paths.model, "model file");
    const classify::Model model = classify::Model::load(cfg.paths.model);
    model.require_schema(features::schema_version(cfg.feature_groups));

    std::vector<CandidatePair> pairs = jsonl::load_pairs(pairs_path);
    parallel_for(pairs.size(), worker_count(cfg.workers), [&](std::size_t i) {
        pairs[i].predicted_probability = model.predict(pairs[i].features);
    });

    std::map<std::string, std::vector<CandidatePair>> by_reference;
    for (CandidatePair& pair : pairs) {
        by_reference[pair.reference_id].push_back(std::move(pair));
    }
    fs::create_directories(cfg.paths.out_dir);
    const std::string links_path = cfg.paths.out_dir + "/links.jsonl";
    std::ofstream out(links_path);
    std::size_t linked = 0;
    for (const auto& [reference_id, group] : by_reference) {
        const auto selected = classify::select_top1(group);
        if (!selected) continue;
        json j;
        j["reference_id"] = reference_id;
        j["record_id"] = *selected;
        out << j.dump() << '\n';
        ++linked;
    }
    std::cout << linked << " references linked (of " << by_reference.size()
              << " with candidates); links written to " << links_path << "\n";
    return 0;
}

int cmd_evaluate(const config::PipelineConfig& cfg) {
    require_path(cfg.paths.records, "records file");
    require_path(cfg.paths.gold, "gold file");
    const std::vector<SegmentedReference> refs = load_preprocessed_references(cfg);
    const std::vector<BibRecord> records = jsonl::load_records(cfg.paths.records);
    const GoldStandard gold = jsonl::load_gold(cfg.paths.gold);
    const unsigned workers = worker_count(cfg.workers);

    const auto validation = validate_corpus(refs, records, gold);
    if (!validation.ok()) {
        for (const std::string& violation : validation.violations) {
            std::cerr << "corpus violation: " << violation << "\n";
        }
        throw InputError("corpus failed validation; aborting evaluation");
    }

    index::Index idx;
    if (!cfg.paths.index.empty() && fs::exists(cfg.paths.index)) {
        idx = index::Index::load(cfg.paths.index);
    } else {
        idx = index::Index::build(records);
    }

    fs::create_directories(cfg.paths.out_dir);
    json report;
    report["config_fingerprint"] = config::fingerprint(cfg);

    // 1. combination filter (persisted; reused below unless config pins a set)
    blocking::BlockingConfig blocking_cfg = cfg.blocking;
    const auto filter = blocking::filter_combinations(refs, gold, idx, cfg.blocking);
    {
        std::ofstream combos_out(cfg.paths.out_dir + "/enabled_combinations.json");
        combos_out << combos_to_json(filter.retained).dump(2) << '\n';
        json stats = json::array();
        for (const auto& s : filter.stats) {
            stats.push_back({{"combination", s.combo.name()},
                             {"applicable", s.applicable},
                             {"evaluated", s.evaluated},
                             {"precision", s.precision},
                             {"retained", s.retained}});
        }
        report["combination_filter"] = {{"retained", filter.retained.size()},
                                        {"threshold", cfg.blocking.combination_threshold},
                                        {"stats", std::move(stats)}};
        std::cout << "combination filter: " << filter.retained.size() << " of "
                  << blocking::SegmentCombination::all().size() << " retained\n";
    }
    if (blocking_cfg.enabled_combinations.empty()) {
        blocking_cfg.enabled_combinations = filter.retained;
    }

    // 2. blocking curves for the three strategies
    {
        std::ofstream curves(cfg.paths.out_dir + "/blocking_curves.csv");
        curves << "strategy,cutoff,precision,recall\n";
        for (const auto strategy : {blocking::Strategy::StringsOnly,
                                    blocking::Strategy::SegmentsOnly,
                                    blocking::Strategy::Combined}) {
            blocking::BlockingConfig curve_cfg = blocking_cfg;
            curve_cfg.strategy = strategy;
            const auto curve =
                eval::blocking_curve(refs, gold, idx, curve_cfg, cfg.eval.max_cutoff, workers);
            for (const auto& point : curve.points) {
                curves << curve.strategy << ',' << point.cutoff << ',' << point.precision << ','
                       << (point.recall_defined ? std::to_string(point.recall) : "") << '\n';
            }
        }
    }

    // 3. candidate statistics + pair construction at the configured cutoff
    const auto stats = eval::blocking_stats(refs, gold, idx, blocking_cfg, workers);
    report["blocking"] = {{"strategy", blocking::strategy_name(blocking_cfg.strategy)},
                          {"cutoff", blocking_cfg.cutoff},
                          {"pair_count", stats.pair_count},
                          {"positive_pairs", stats.positive_pairs},
                          {"references_with_candidates", stats.references_with_candidates},
                          {"references_with_correct", stats.references_with_correct},
                          {"matchable_references", stats.matchable_references},
                          {"blocking_missed", stats.blocking_missed},
                          {"candidates_min", stats.min_candidates},
                          {"candidates_mean", stats.mean_candidates},
                          {"candidates_sd", stats.sd_candidates},
                          {"candidates_max", stats.max_candidates}};
    std::cout << "blocking: " << stats.pair_count << " pairs, " << stats.positive_pairs
              << " positive, mean " << stats.mean_candidates << " candidates/reference\n";

    std::vector<std::set<std::string>> candidate_sets(refs.size());
    parallel_for(refs.size(), workers, [&](std::size_t i) {
        candidate_sets[i] = blocking::retrieve_candidates(refs[i], idx, blocking_cfg);
    });
    std::map<std::string, const BibRecord*> record_by_id;
    for (const BibRecord& record : records) record_by_id[record.id] = &record;

    std::vector<CandidatePair> pairs;
    std::vector<std::string> fold_reference_ids;
    std::vector<std::string> blocking_missed;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        const auto gold_it = gold.entries.find(refs[i].id);
        const bool matchable = gold_it != gold.entries.end() && !gold_it->second.empty();
        bool any_correct = false;
        for (const std::string& record_id : candidate_sets[i]) {
            CandidatePair pair;
            pair.reference_id = refs[i].id;
            pair.record_id = record_id;
            pair.gold_label = matchable && gold_it->second.count(record_id) > 0;
            any_correct = any_correct || *pair.gold_label;
            pairs.push_back(std::move(pair));
        }
        if (!candidate_sets[i].empty()) fold_reference_ids.push_back(refs[i].id);
        if (matchable && !any_correct) blocking_missed.push_back(refs[i].id);
    }
    std::map<std::string, const SegmentedReference*> ref_by_id;
    for (const SegmentedReference& ref : refs) ref_by_id[ref.id] = &ref;
    parallel_for(pairs.size(), workers, [&](std::size_t i) {
        pairs[i].features = features::extract_features(*ref_by_id.at(pairs[i].reference_id),
                                                       *record_by_id.at(pairs[i].record_id),
                                                       cfg.feature_groups);
    });

    const auto folds = eval::grouped_kfold(fold_reference_ids, cfg.eval.folds, cfg.eval.seed);
    classify::TrainOptions options = cfg.classifier;
    options.schema_version = features::schema_version(cfg.feature_groups);

    const auto cv = eval::cross_validate(pairs, folds, options, workers);
    report["cross_validation"] = {{"classifier", classify::classifier_kind_name(options.kind)},
                                  {"groups", cfg.feature_groups.names()},
                                  {"precision", cv.precision},
                                  {"recall", cv.recall},
                                  {"f1", cv.f1}};
    std::cout << "pair-level CV (" << classify::classifier_kind_name(options.kind)
              << "): P=" << cv.precision << " R=" << cv.recall << " F1=" << cv.f1 << "\n";

    const auto top1 = eval::evaluate_top1(pairs, folds, options, blocking_missed, workers);
    report["top1"] = {{"precision", top1.post_blocking.precision},
                      {"recall", top1.post_blocking.recall},
                      {"f1", top1.post_blocking.f1},
                      {"pipeline_precision", top1.pipeline.precision},
                      {"pipeline_recall", top1.pipeline.recall},
                      {"pipeline_f1", top1.pipeline.f1}};
    std::cout << "top-1: P=" << top1.post_blocking.precision << " R=" << top1.post_blocking.recall
              << " | pipeline R=" << top1.pipeline.recall << "\n";

    json histogram = json::object();
    for (const auto& [matches, count] : eval::match_count_histogram(gold)) {
        histogram[std::to_string(matches)] = count;
    }
    report["gold_match_histogram"] = std::move(histogram);

    std::ofstream report_out(cfg.paths.out_dir + "/eval_report.json");
    report_out << report.dump(2) << '\n';
    std::cout << "report written to " << cfg.paths.out_dir << "/eval_report.json\n";
    return 0;
}

int cmd_gen_corpus(const std::string& out_dir, std::uint64_t seed) {
    corpusgen::CorpusSpec spec;
    if (seed != 0) spec.seed = seed;
    const corpusgen::Corpus corpus = corpusgen::generate_corpus(spec);
    fs::create_directories(out_dir);
    jsonl::save_records(corpus.records, out_dir + "/records.jsonl");
    jsonl::save_references(corpus.references, out_dir + "/references.jsonl");
    jsonl::save_gold(corpus.gold, out_dir + "/gold.jsonl");
    std::cout << corpus.records.size() << " records, " << corpus.references.size()
              << " references, " << corpus.gold.entries.size() << " gold entries written to "
              << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"refmatch - citation matching toolkit"};
    app.require_subcommand(1);

    CliOverrides cli;
    std::string gen_out = "corpus";
    std::uint64_t gen_seed = 0;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", cli.config_path, "config JSON file");
        cmd->add_option("--records", cli.records);
        cmd->add_option("--references", cli.references);
        cmd->add_option("--gold", cli.gold);
        cmd->add_option("--index", cli.index_path);
        cmd->add_option("--model", cli.model);
        cmd->add_option("--out", cli.out_dir, "output directory");
        cmd->add_option("--cutoff", cli.cutoff);
        cmd->add_option("--strategy", cli.strategy, "segments|strings|combined");
        cmd->add_option("--groups", cli.groups, "feature groups, e.g. APB or A,P");
        cmd->add_option("--classifier", cli.classifier, "linear|forest");
        cmd->add_option("--seed", cli.seed);
        cmd->add_option("--workers", cli.workers);
        cmd->add_option("--combinations", cli.combinations,
                        "JSON file with enabled segment combinations");
    };

    CLI::App* index_cmd = app.add_subcommand("index", "build and persist the record index");
    CLI::App* block_cmd = app.add_subcommand("block", "retrieve candidate sets per reference");
    CLI::App* feat_cmd = app.add_subcommand("featurize", "compute feature vectors for candidates");
    CLI::App* train_cmd = app.add_subcommand("train", "train the match classifier");
    CLI::App* match_cmd = app.add_subcommand("match", "apply a model and emit top-1 links");
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "run the full evaluation harness");
    for (CLI::App* cmd : {index_cmd, block_cmd, feat_cmd, train_cmd, match_cmd, eval_cmd}) {
        add_common(cmd);
    }
    CLI::App* gen_cmd = app.add_subcommand("gen-corpus", "generate the synthetic benchmark corpus");
    gen_cmd->add_option("--out", gen_out, "output directory");
    gen_cmd->add_option("--seed", gen_seed, "generator seed (0 = default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) return cmd_gen_corpus(gen_out, gen_seed);
        const config::PipelineConfig cfg = resolve_config(cli);
        if (index_cmd->parsed()) return cmd_index(cfg);
        if (block_cmd->parsed()) return cmd_block(cfg);
        if (feat_cmd->parsed()) return cmd_featurize(cfg);
        if (train_cmd->parsed()) return cmd_train(cfg);
        if (match_cmd->parsed()) return cmd_match(cfg);
        if (eval_cmd->parsed()) return cmd_evaluate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "refmatch/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "refmatch/error.hpp"

namespace refmatch::config {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> known,
                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown config key '" + key + "' in " + where);
    }
}

}  // namespace

PipelineConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(j, {"paths", "textnorm", "blocking", "features", "classifier", "eval", "workers"},
               "top level");
    PipelineConfig config;

    if (j.contains("paths")) {
        const json& p = j.at("paths");
        check_keys(p, {"records", "references", "gold", "index", "model", "out_dir"}, "paths");
        config.paths.records = p.value("records", "");
        config.paths.references = p.value("references", "");
        config.paths.gold = p.value("gold", "");
        config.paths.index = p.value("index", "");
        config.paths.model = p.value("model", "");
        config.paths.out_dir = p.value("out_dir", ".");
    }

    if (j.contains("textnorm")) {
        const json& t = j.at("textnorm");
        check_keys(t, {"stopwords", "year_min", "year_max"}, "textnorm");
        if (t.contains("stopwords")) {
            config.blocking.stopwords = t.at("stopwords").get<std::vector<std::string>>();
        }
        config.blocking.year_window.min_year = t.value("year_min", 1400);
        config.blocking.year_window.max_year = t.value("year_max", 2099);
    }

    if (j.contains("blocking")) {
        const json& b = j.at("blocking");
        check_keys(b,
                   {"strategy", "cutoff", "combination_threshold", "enabled_combinations",
                    "precision_over_all"},
                   "blocking");
        if (b.contains("strategy")) {
            const auto strategy = blocking::strategy_from_name(b.at("strategy").get<std::string>());
            if (!strategy) {
                throw ConfigError("unknown blocking strategy '" +
                                  b.at("strategy").get<std::string>() + "'");
            }
            config.blocking.strategy = *strategy;
        }
        config.blocking.cutoff = b.value("cutoff", 5);
        if (config.blocking.cutoff < 1) throw ConfigError("blocking cutoff must be >= 1");
        config.blocking.combination_threshold = b.value("combination_threshold", 0.6);
        config.blocking.precision_over_all = b.value("precision_over_all", false);
        if (b.contains("enabled_combinations") && !b.at("enabled_combinations").is_null()) {
            for (const json& entry : b.at("enabled_combinations")) {
                const auto combo =
                    blocking::SegmentCombination::parse(entry.get<std::vector<std::string>>());
                if (!combo) throw ConfigError("bad combination in enabled_combinations");
                config.blocking.enabled_combinations.insert(*combo);
            }
        }
    }

    if (j.contains("features")) {
        const json& f = j.at("features");
        check_keys(f, {"groups"}, "features");
        if (f.contains("groups")) {
            config.feature_groups =
                features::GroupSet::parse(f.at("groups").get<std::vector<std::string>>());
        }
    }

    if (j.contains("classifier")) {
        const json& c = j.at("classifier");
        check_keys(c, {"kind", "seed", "linear", "forest"}, "classifier");
        if (c.contains("kind")) {
            const auto kind = classify::classifier_kind_from_name(c.at("kind").get<std::string>());
            if (!kind) {
                throw ConfigError("unknown classifier kind '" + c.at("kind").get<std::string>() +
                                  "'");
            }
            config.classifier.kind = *kind;
        }
        config.classifier.seed = c.value("seed", std::uint64_t{42});
        if (c.contains("linear")) {
            const json& l = c.at("linear");
            check_keys(l, {"l2_strength", "max_epochs", "tolerance", "class_weight"}, "linear");
            config.classifier.linear.l2_strength = l.value("l2_strength", 1.0);
            config.classifier.linear.max_epochs = l.value("max_epochs", 1000);
            config.classifier.linear.tolerance = l.value("tolerance", 1e-4);
            config.classifier.linear.class_weight = l.value("class_weight", false);
        }
        if (c.contains("forest")) {
            const json& f = c.at("forest");
            check_keys(f, {"trees", "max_depth", "features_per_split"}, "forest");
            config.classifier.forest.tree_count = f.value("trees", 100);
            config.classifier.forest.max_depth = f.value("max_depth", 0);
            config.classifier.forest.features_per_split = f.value("features_per_split", 0);
        }
    }

    if (j.contains("eval")) {
        const json& e = j.at("eval");
        check_keys(e, {"folds", "seed", "max_cutoff"}, "eval");
        config.eval.folds = e.value("folds", 10);
        config.eval.seed = e.value("seed", std::uint64_t{7});
        config.eval.max_cutoff = e.value("max_cutoff", 15);
        if (config.eval.folds < 2) throw ConfigError("eval.folds must be >= 2");
    }

    config.workers = j.value("workers", 0u);
    config.classifier.schema_version = features::schema_version(config.feature_groups);
    return config;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_json(const PipelineConfig& config) {
    json j;
    j["paths"] = {{"records", config.paths.records},   {"references", config.paths.references},
                  {"gold", config.paths.gold},         {"index", config.paths.index},
                  {"model", config.paths.model},       {"out_dir", config.paths.out_dir}};
    j["textnorm"] = {{"stopwords", config.blocking.stopwords},
                     {"year_min", config.blocking.year_window.min_year},
                     {"year_max", config.blocking.year_window.max_year}};
    json combos = json::array();
    for (const auto& combo : config.blocking.enabled_combinations) {
        json names = json::array();
        for (const SegmentKind kind : combo.kinds()) names.push_back(segment_kind_name(kind));
        combos.push_back(std::move(names));
    }
    j["blocking"] = {{"strategy", blocking::strategy_name(config.blocking.strategy)},
                     {"cutoff", config.blocking.cutoff},
                     {"combination_threshold", config.blocking.combination_threshold},
                     {"enabled_combinations", std::move(combos)},
                     {"precision_over_all", config.blocking.precision_over_all}};
    j["features"] = {{"groups", config.feature_groups.names()}};
    j["classifier"] = {{"kind", classify::classifier_kind_name(config.classifier.kind)},
                       {"seed", config.classifier.seed},
                       {"linear",
                        {{"l2_strength", config.classifier.linear.l2_strength},
                         {"max_epochs", config.classifier.linear.max_epochs},
                         {"tolerance", config.classifier.linear.tolerance},
                         {"class_weight", config.classifier.linear.class_weight}}},
                       {"forest",
                        {{"trees", config.classifier.forest.tree_count},
                         {"max_depth", config.classifier.forest.max_depth},
                         {"features_per_split", config.classifier.forest.features_per_split}}}};
    j["eval"] = {{"folds", config.eval.folds},
                 {"seed", config.eval.seed},
                 {"max_cutoff", config.eval.max_cutoff}};
    j["workers"] = config.workers;
    return j.dump(2);
}

std::string fingerprint(const PipelineConfig& config) {
    const std::string canonical = to_json(config);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace refmatch::config

#include "refmatch/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "refmatch/error.hpp"
#include "refmatch/rng.hpp"

namespace refmatch::classify {

using nlohmann::json;

const char* classifier_kind_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::LargeMarginLinear: return "linear";
        case ClassifierKind::TreeEnsemble: return "forest";
    }
    return "?";
}

std::optional<ClassifierKind> classifier_kind_from_name(const std::string& name) {
    if (name == "linear") return ClassifierKind::LargeMarginLinear;
    if (name == "forest") return ClassifierKind::TreeEnsemble;
    return std::nullopt;
}

namespace {

void check_inputs(const std::vector<std::vector<double>>& features,
                  const std::vector<int>& labels, const std::vector<std::string>* pair_ids) {
    if (features.size() != labels.size()) {
        throw InputError("feature/label count mismatch");
    }
    if (features.empty()) throw InputError("empty training set");
    const std::size_t dim = features.front().size();
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != dim) throw InputError("inconsistent feature vector length");
        for (const double v : features[i]) {
            if (!std::isfinite(v)) {
                const std::string name =
                    pair_ids && i < pair_ids->size() ? (*pair_ids)[i] : std::to_string(i);
                throw InputError("non-finite feature value in pair " + name);
            }
        }
        (labels[i] > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw InputError("training data contains a single class only");
    }
}

// Platt scaling: fit sigma(a*s + b) on decision values by regularized
// Newton iterations (Lin, Lin & Weng 2007).
std::pair<double, double> fit_sigmoid(const std::vector<double>& scores,
                                      const std::vector<int>& labels) {
    const std::size_t n = scores.size();
    double prior1 = 0.0;
    for (const int y : labels) prior1 += y > 0 ? 1.0 : 0.0;
    const double prior0 = static_cast<double>(n) - prior1;
    const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo_target = 1.0 / (prior0 + 2.0);

    std::vector<double> targets(n);
    for (std::size_t i = 0; i < n; ++i) targets[i] = labels[i] > 0 ? hi_target : lo_target;

    double a = 0.0;
    double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
    const int max_iter = 100;
    const double min_step = 1e-10, sigma = 1e-12, eps = 1e-5;

    const auto objective = [&](double pa, double pb) {
        double value = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double fApB = scores[i] * pa + pb;
            if (fApB >= 0) {
                value += targets[i] * fApB + std::log1p(std::exp(-fApB));
            } else {
                value += (targets[i] - 1.0) * fApB + std::log1p(std::exp(fApB));
            }
        }
        return value;
    };

    double fval = objective(a, b);
    for (int iter = 0; iter < max_iter; ++iter) {
        double h11 = sigma, h22 = sigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double fApB = scores[i] * a + b;
            double p, q;
            if (fApB >= 0) {
                p = std::exp(-fApB) / (1.0 + std::exp(-fApB));
                q = 1.0 / (1.0 + std::exp(-fApB));
            } else {
                p = 1.0 / (1.0 + std::exp(fApB));
                q = std::exp(fApB) / (1.0 + std::exp(fApB));
            }
            const double d2 = p * q;
            h11 += scores[i] * scores[i] * d2;
            h22 += d2;
            h21 += scores[i] * d2;
            const double d1 = targets[i] - p;
            g1 += scores[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < eps && std::abs(g2) < eps) break;
        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * da + g2 * db;
        double step = 1.0;
        while (step >= min_step) {
            const double new_a = a + step * da, new_b = b + step * db;
            const double new_f = objective(new_a, new_b);
            if (new_f < fval + 1e-4 * step * gd) {
                a = new_a;
                b = new_b;
                fval = new_f;
                break;
            }
            step /= 2.0;
        }
        if (step < min_step) break;
    }
    return {a, b};
}

double sigmoid_probability(double score, double a, double b) {
    const double fApB = score * a + b;
    // P(match) = 1 / (1 + exp(a*s + b)) with Platt's sign convention.
    if (fApB >= 0) {
        return std::exp(-fApB) / (1.0 + std::exp(-fApB));
    }
    return 1.0 / (1.0 + std::exp(fApB));
}

struct NodeWork {
    std::vector<std::uint32_t> samples;
    std::int32_t node_index;
    int depth;
};

}  // namespace

Model Model::train(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, const TrainOptions& options,
                   const std::vector<std::string>* pair_ids) {
    check_inputs(features, labels, pair_ids);
    Model model;
    model.kind_ = options.kind;
    model.schema_version_ = options.schema_version;
    const std::size_t n = features.size();
    const std::size_t dim = features.front().size();

    if (options.kind == ClassifierKind::LargeMarginLinear) {
        // Standardize per feature from the training split only.
        model.means_.assign(dim, 0.0);
        model.scales_.assign(dim, 1.0);
        for (std::size_t f = 0; f < dim; ++f) {
            double mean = 0.0;
            for (const auto& x : features) mean += x[f];
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (const auto& x : features) var += (x[f] - mean) * (x[f] - mean);
            var /= static_cast<double>(n);
            model.means_[f] = mean;
            model.scales_[f] = var > 0.0 ? std::sqrt(var) : 1.0;
        }
        std::vector<std::vector<double>> x(n, std::vector<double>(dim + 1, 1.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t f = 0; f < dim; ++f) {
                x[i][f] = (features[i][f] - model.means_[f]) / model.scales_[f];
            }
        }
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = labels[i] > 0 ? 1.0 : -1.0;

        // Hinge loss + L2 via dual coordinate descent (liblinear's L1-loss
        // dual solver). C = 1 / l2_strength.
        const double c_base = 1.0 / std::max(options.linear.l2_strength, 1e-12);
        double pos_weight = 1.0, neg_weight = 1.0;
        if (options.linear.class_weight) {
            double pos = 0.0;
            for (const int l : labels) pos += l > 0 ? 1.0 : 0.0;
            const double neg = static_cast<double>(n) - pos;
            pos_weight = static_cast<double>(n) / (2.0 * pos);
            neg_weight = static_cast<double>(n) / (2.0 * neg);
        }
        std::vector<double> upper(n);
        for (std::size_t i = 0; i < n; ++i) {
            upper[i] = c_base * (labels[i] > 0 ? pos_weight : neg_weight);
        }
        std::vector<double> qii(n);
        for (std::size_t i = 0; i < n; ++i) {
            qii[i] = std::inner_product(x[i].begin(), x[i].end(), x[i].begin(), 0.0);
        }
        std::vector<double> alpha(n, 0.0), w(dim + 1, 0.0);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        Rng rng(options.seed);
        for (int epoch = 0; epoch < options.linear.max_epochs; ++epoch) {
            rng.shuffle(order);
            double max_violation = 0.0;
            for (const std::size_t i : order) {
                const double g = y[i] * std::inner_product(x[i].begin(), x[i].end(), w.begin(),
                                                           0.0) - 1.0;
                double pg = g;
                if (alpha[i] <= 0.0) pg = std::min(g, 0.0);
                if (alpha[i] >= upper[i]) pg = std::max(g, 0.0);
                max_violation = std::max(max_violation, std::abs(pg));
                if (pg == 0.0) continue;
                const double old = alpha[i];
                alpha[i] = std::clamp(old - g / qii[i], 0.0, upper[i]);
                const double delta = (alpha[i] - old) * y[i];
                for (std::size_t f = 0; f <= dim; ++f) w[f] += delta * x[i][f];
            }
            if (max_violation < options.linear.tolerance) break;
        }
        model.weights_ = std::move(w);

        std::vector<double> scores(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = std::inner_product(x[i].begin(), x[i].end(), model.weights_.begin(), 0.0);
        }
        const auto [a, b] = fit_sigmoid(scores, labels);
        model.platt_a_ = a;
        model.platt_b_ = b;
        return model;
    }

    // TreeEnsemble: bagged depth-unbounded CARTs on Gini impurity, hard votes.
    const int tree_count = std::max(options.forest.tree_count, 1);
    int mtry = options.forest.features_per_split;
    if (mtry <= 0) mtry = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(dim))));
    mtry = std::min<int>(mtry, static_cast<int>(dim));

    model.trees_.reserve(static_cast<std::size_t>(tree_count));
    for (int t = 0; t < tree_count; ++t) {
        Rng rng(options.seed + static_cast<std::uint64_t>(t) * 0x9E3779B97F4A7C15ULL);
        std::vector<std::uint32_t> sample(n);
        for (std::size_t i = 0; i < n; ++i) {
            sample[i] = static_cast<std::uint32_t>(rng.index(n));
        }
        std::vector<TreeNode> nodes;
        nodes.emplace_back();
        std::vector<NodeWork> stack;
        stack.push_back({std::move(sample), 0, 0});
        std::vector<int> feature_pool(static_cast<int>(dim));
        while (!stack.empty()) {
            NodeWork work = std::move(stack.back());
            stack.pop_back();
            std::size_t positives = 0;
            for (const std::uint32_t s : work.samples) positives += labels[s] > 0 ? 1 : 0;
            const std::size_t total = work.samples.size();
            const int majority = positives * 2 > total ? 1 : 0;

            const bool pure = positives == 0 || positives == total;
            const bool depth_capped =
                options.forest.max_depth > 0 && work.depth >= options.forest.max_depth;
            if (pure || depth_capped || total < 2) {
                nodes[static_cast<std::size_t>(work.node_index)].feature = -1;
                nodes[static_cast<std::size_t>(work.node_index)].label = majority;
                continue;
            }

            // Sample mtry features without replacement.
            std::iota(feature_pool.begin(), feature_pool.end(), 0);
            for (int f = 0; f < mtry; ++f) {
                const std::size_t j = f + rng.index(dim - static_cast<std::size_t>(f));
                std::swap(feature_pool[static_cast<std::size_t>(f)], feature_pool[j]);
            }

            double best_gini = 2.0;  // lower is better; valid ginis are <= 0.5
            int best_feature = -1;
            double best_threshold = 0.0;
            std::vector<std::uint32_t> sorted = work.samples;
            for (int f = 0; f < mtry; ++f) {
                const int feature = feature_pool[static_cast<std::size_t>(f)];
                std::sort(sorted.begin(), sorted.end(),
                          [&](std::uint32_t lhs, std::uint32_t rhs) {
                              const double a = features[lhs][static_cast<std::size_t>(feature)];
                              const double b = features[rhs][static_cast<std::size_t>(feature)];
                              if (a != b) return a < b;
                              return lhs < rhs;
                          });
                std::size_t left_pos = 0;
                for (std::size_t i = 1; i < total; ++i) {
                    left_pos += labels[sorted[i - 1]] > 0 ? 1 : 0;
                    const double prev = features[sorted[i - 1]][static_cast<std::size_t>(feature)];
                    const double curr = features[sorted[i]][static_cast<std::size_t>(feature)];
                    if (prev == curr) continue;
                    const double nl = static_cast<double>(i);
                    const double nr = static_cast<double>(total - i);
                    const double pl = static_cast<double>(left_pos) / nl;
                    const double pr = static_cast<double>(positives - left_pos) / nr;
                    const double gini =
                        (nl * 2.0 * pl * (1.0 - pl) + nr * 2.0 * pr * (1.0 - pr)) /
                        static_cast<double>(total);
                    if (gini < best_gini) {
                        best_gini = gini;
                        best_feature = feature;
                        best_threshold = prev + (curr - prev) / 2.0;
                    }
                }
            }
            if (best_feature < 0) {  // all candidate features constant
                nodes[static_cast<std::size_t>(work.node_index)].feature = -1;
                nodes[static_cast<std::size_t>(work.node_index)].label = majority;
                continue;
            }
            std::vector<std::uint32_t> left, right;
            for (const std::uint32_t s : work.samples) {
                (features[s][static_cast<std::size_t>(best_feature)] <= best_threshold ? left
                                                                                       : right)
                    .push_back(s);
            }
            if (left.empty() || right.empty()) {
                nodes[static_cast<std::size_t>(work.node_index)].feature = -1;
                nodes[static_cast<std::size_t>(work.node_index)].label = majority;
                continue;
            }
            const std::int32_t left_index = static_cast<std::int32_t>(nodes.size());
            nodes.emplace_back();
            const std::int32_t right_index = static_cast<std::int32_t>(nodes.size());
            nodes.emplace_back();
            TreeNode& node = nodes[static_cast<std::size_t>(work.node_index)];
            node.feature = best_feature;
            node.threshold = best_threshold;
            node.left = left_index;
            node.right = right_index;
            stack.push_back({std::move(right), right_index, work.depth + 1});
            stack.push_back({std::move(left), left_index, work.depth + 1});
        }
        model.trees_.push_back(std::move(nodes));
    }
    return model;
}

double Model::decision_value(const std::vector<double>& features) const {
    double s = weights_.back();  // bias
    for (std::size_t f = 0; f + 1 < weights_.size(); ++f) {
        s += weights_[f] * (features[f] - means_[f]) / scales_[f];
    }
    return s;
}

double Model::predict(const std::vector<double>& features) const {
    if (kind_ == ClassifierKind::LargeMarginLinear) {
        if (features.size() + 1 != weights_.size()) {
            throw InputError("feature vector length does not match the trained model");
        }
        return sigmoid_probability(decision_value(features), platt_a_, platt_b_);
    }
    std::size_t votes = 0;
    for (const std::vector<TreeNode>& tree : trees_) {
        std::int32_t at = 0;
        while (tree[static_cast<std::size_t>(at)].feature >= 0) {
            const TreeNode& node = tree[static_cast<std::size_t>(at)];
            if (static_cast<std::size_t>(node.feature) >= features.size()) {
                throw InputError("feature vector length does not match the trained model");
            }
            at = features[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                    : node.right;
        }
        votes += tree[static_cast<std::size_t>(at)].label > 0 ? 1 : 0;
    }
    return static_cast<double>(votes) / static_cast<double>(trees_.size());
}

void Model::require_schema(const std::string& version) const {
    if (schema_version_ != version) {
        throw InputError("feature schema mismatch: model built for '" + schema_version_ +
                         "', data is '" + version + "'");
    }
}

std::string Model::to_json() const {
    json j;
    j["kind"] = classifier_kind_name(kind_);
    j["schema_version"] = schema_version_;
    if (kind_ == ClassifierKind::LargeMarginLinear) {
        j["parameters"] = {{"means", means_},
                           {"scales", scales_},
                           {"weights", weights_},
                           {"platt_a", platt_a_},
                           {"platt_b", platt_b_}};
    } else {
        json trees = json::array();
        for (const std::vector<TreeNode>& tree : trees_) {
            json nodes = json::array();
            for (const TreeNode& node : tree) {
                nodes.push_back({{"f", node.feature},
                                 {"t", node.threshold},
                                 {"l", node.left},
                                 {"r", node.right},
                                 {"c", node.label}});
            }
            trees.push_back(std::move(nodes));
        }
        j["parameters"] = {{"trees", std::move(trees)}};
    }
    return j.dump();
}

Model Model::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed model file: ") + e.what());
    }
    Model model;
    const auto kind = classifier_kind_from_name(j.at("kind").get<std::string>());
    if (!kind) throw InputError("unknown classifier kind in model file");
    model.kind_ = *kind;
    model.schema_version_ = j.at("schema_version").get<std::string>();
    const json& p = j.at("parameters");
    if (model.kind_ == ClassifierKind::LargeMarginLinear) {
        model.means_ = p.at("means").get<std::vector<double>>();
        model.scales_ = p.at("scales").get<std::vector<double>>();
        model.weights_ = p.at("weights").get<std::vector<double>>();
        model.platt_a_ = p.at("platt_a").get<double>();
        model.platt_b_ = p.at("platt_b").get<double>();
    } else {
        for (const json& jt : p.at("trees")) {
            std::vector<TreeNode> tree;
            tree.reserve(jt.size());
            for (const json& jn : jt) {
                TreeNode node;
                node.feature = jn.at("f").get<int>();
                node.threshold = jn.at("t").get<double>();
                node.left = jn.at("l").get<std::int32_t>();
                node.right = jn.at("r").get<std::int32_t>();
                node.label = jn.at("c").get<int>();
                tree.push_back(node);
            }
            model.trees_.push_back(std::move(tree));
        }
        if (model.trees_.empty()) throw InputError("model file contains no trees");
    }
    return model;
}

void Model::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write model file " + path);
    out << to_json() << '\n';
}

Model Model::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

std::optional<std::string> select_top1(const std::vector<CandidatePair>& pairs) {
    std::optional<std::string> best_id;
    double best_probability = 0.5;  // strictly-greater threshold
    for (const CandidatePair& pair : pairs) {
        if (!pair.predicted_probability) {
            throw InputError("select_top1: pair without prediction (" + pair.reference_id + ", " +
                             pair.record_id + ")");
        }
        const double p = *pair.predicted_probability;
        if (p <= 0.5) continue;
        if (!best_id || p > best_probability ||
            (p == best_probability && pair.record_id < *best_id)) {
            best_id = pair.record_id;
            best_probability = p;
        }
    }
    return best_id;
}

}  // namespace refmatch::classify

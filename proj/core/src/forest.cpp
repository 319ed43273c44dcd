#include "drowsy/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "drowsy/error.hpp"

namespace drowsy {

namespace {

struct TreeBuilder {
    const std::vector<std::vector<double>>& x;
    const std::vector<int>& y;
    int num_classes;
    int max_depth;
    int features_per_split;
    int min_samples_split;
    std::mt19937_64& rng;
    DecisionTree tree;

    std::vector<int> histogram_of(const std::vector<size_t>& idx) const {
        std::vector<int> h(static_cast<size_t>(num_classes), 0);
        for (size_t i : idx) ++h[static_cast<size_t>(y[i])];
        return h;
    }

    static double gini(const std::vector<int>& h, int total) {
        if (total == 0) return 0.0;
        double g = 1.0;
        for (int c : h) {
            double p = static_cast<double>(c) / total;
            g -= p * p;
        }
        return g;
    }

    int make_leaf(const std::vector<size_t>& idx) {
        TreeNode node;
        node.histogram = histogram_of(idx);
        tree.nodes.push_back(std::move(node));
        return static_cast<int>(tree.nodes.size() - 1);
    }

    int build(std::vector<size_t> idx, int depth) {
        auto hist = histogram_of(idx);
        bool pure = std::count_if(hist.begin(), hist.end(), [](int c) { return c > 0; }) <= 1;
        if (pure || static_cast<int>(idx.size()) < min_samples_split ||
            (max_depth >= 0 && depth >= max_depth)) {
            return make_leaf(idx);
        }

        size_t dim = x.front().size();
        std::vector<size_t> features(dim);
        std::iota(features.begin(), features.end(), size_t{0});
        for (size_t i = dim; i > 1; --i) {
            std::swap(features[i - 1], features[rng() % i]);
        }
        size_t k = std::min<size_t>(static_cast<size_t>(features_per_split), dim);

        double parent_gini = gini(hist, static_cast<int>(idx.size()));
        double best_gain = 0.0;
        size_t best_feature = dim;
        double best_threshold = 0.0;

        for (size_t fi = 0; fi < k; ++fi) {
            size_t feature = features[fi];
            std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
                return x[a][feature] < x[b][feature] || (x[a][feature] == x[b][feature] && a < b);
            });
            std::vector<int> left(static_cast<size_t>(num_classes), 0);
            std::vector<int> right = hist;
            int n = static_cast<int>(idx.size());
            for (int i = 0; i + 1 < n; ++i) {
                int cls = y[idx[static_cast<size_t>(i)]];
                ++left[static_cast<size_t>(cls)];
                --right[static_cast<size_t>(cls)];
                double a = x[idx[static_cast<size_t>(i)]][feature];
                double b = x[idx[static_cast<size_t>(i + 1)]][feature];
                if (a == b) continue;
                int nl = i + 1, nr = n - nl;
                double gain = parent_gini - (nl * gini(left, nl) + nr * gini(right, nr)) / n;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_feature = feature;
                    best_threshold = (a + b) / 2.0;
                }
            }
        }

        if (best_feature == dim) return make_leaf(idx);

        std::vector<size_t> left_idx, right_idx;
        for (size_t i : idx) {
            (x[i][best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);
        }
        if (left_idx.empty() || right_idx.empty()) return make_leaf(idx);

        int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[static_cast<size_t>(node_id)].feature = static_cast<int>(best_feature);
        tree.nodes[static_cast<size_t>(node_id)].threshold = best_threshold;
        int left_id = build(std::move(left_idx), depth + 1);
        int right_id = build(std::move(right_idx), depth + 1);
        tree.nodes[static_cast<size_t>(node_id)].left = left_id;
        tree.nodes[static_cast<size_t>(node_id)].right = right_id;
        return node_id;
    }
};

}  // namespace

RandomForest train_random_forest(const std::vector<std::vector<double>>& points,
                                 const std::vector<int>& labels, const ForestParams& params) {
    if (points.empty() || points.size() != labels.size()) {
        throw Error(ErrorKind::LengthMismatch, "points and labels must be non-empty and equal");
    }
    if (params.trees < 1) throw Error(ErrorKind::InvalidCount, "need at least one tree");
    int num_classes = *std::max_element(labels.begin(), labels.end()) + 1;
    if (*std::min_element(labels.begin(), labels.end()) < 0) {
        throw Error(ErrorKind::UnknownLabel, "labels must be non-negative class indices");
    }
    std::vector<bool> present(static_cast<size_t>(num_classes), false);
    for (int l : labels) present[static_cast<size_t>(l)] = true;
    if (std::count(present.begin(), present.end(), true) < 2) {
        throw Error(ErrorKind::SingleClassData, "need at least 2 classes");
    }

    RandomForest forest;
    forest.num_classes = num_classes;
    forest.params = params;
    size_t dim = points.front().size();
    int features_per_split = params.features_per_split > 0
                                 ? params.features_per_split
                                 : std::max(1, static_cast<int>(std::sqrt(static_cast<double>(dim))));

    std::mt19937_64 rng(params.seed);
    size_t n = points.size();
    for (int t = 0; t < params.trees; ++t) {
        std::vector<size_t> sample(n);
        for (auto& s : sample) s = static_cast<size_t>(rng() % n);
        TreeBuilder builder{points,    labels,       num_classes,
                            params.max_depth, features_per_split, params.min_samples_split,
                            rng,      {}};
        builder.build(std::move(sample), 0);
        forest.trees.push_back(std::move(builder.tree));
    }
    return forest;
}

int predict_tree(const DecisionTree& tree, const std::vector<double>& x) {
    const TreeNode* node = &tree.nodes.front();
    while (node->feature >= 0) {
        node = &tree.nodes[static_cast<size_t>(x[static_cast<size_t>(node->feature)] <= node->threshold
                                                   ? node->left
                                                   : node->right)];
    }
    int best = 0;
    for (size_t c = 1; c < node->histogram.size(); ++c) {
        if (node->histogram[c] > node->histogram[static_cast<size_t>(best)]) {
            best = static_cast<int>(c);
        }
    }
    return best;
}

int predict_forest(const RandomForest& forest, const std::vector<double>& x) {
    std::vector<int> votes(static_cast<size_t>(forest.num_classes), 0);
    for (const auto& tree : forest.trees) ++votes[static_cast<size_t>(predict_tree(tree, x))];
    int best = 0;
    for (size_t c = 1; c < votes.size(); ++c) {
        if (votes[c] > votes[static_cast<size_t>(best)]) best = static_cast<int>(c);
    }
    return best;
}

}  // namespace drowsy

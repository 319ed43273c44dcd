#pragma once

#include <cstdint>
#include <vector>

namespace drowsy {

struct ForestParams {
    int trees = 100;
    int max_depth = -1;          // -1 = unlimited
    int features_per_split = 0;  // 0 = floor(sqrt(dim)), at least 1
    int min_samples_split = 2;
    uint64_t seed = 0;
};

/// Axis-aligned split node; leaves carry the training-class histogram.
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<int> histogram;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // node 0 is the root
};

struct RandomForest {
    std::vector<DecisionTree> trees;
    int num_classes = 0;
    ForestParams params;
};

/// Gini-impurity CART trees on bootstrap resamples, features_per_split
/// random candidate features per node. Deterministic for a fixed seed.
RandomForest train_random_forest(const std::vector<std::vector<double>>& points,
                                 const std::vector<int>& labels, const ForestParams& params);

int predict_tree(const DecisionTree& tree, const std::vector<double>& x);

/// Majority over trees, ties to the lowest class index.
int predict_forest(const RandomForest& forest, const std::vector<double>& x);

}  // namespace drowsy

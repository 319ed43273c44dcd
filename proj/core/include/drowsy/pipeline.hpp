#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "drowsy/features.hpp"
#include "drowsy/forest.hpp"
#include "drowsy/ingest.hpp"
#include "drowsy/sampling.hpp"
#include "drowsy/svm.hpp"

namespace drowsy {

/// One sampled anchor in the subset, with its split and fold.
struct SubsetEntry {
    std::string subject_id;
    int scale_value = 0;
    ClassLabel label = ClassLabel::Unlabeled;
    int64_t anchor_frame = 0;
    bool train = false;
    int fold = 0;
};

struct SubsetManifest {
    SubsetSpec spec;
    std::vector<SubsetEntry> entries;
    int window_dropped = 0;  // anchors discarded for missing window history
};

/// Sample per-class anchors over the dataset: equally dispersed timestamp
/// bins per class, bins assigned round-robin over the class's recordings,
/// seeded-uniform pick within each bin. Anchors without window history are
/// dropped and counted. Throws InsufficientFrames when a class pool is
/// smaller than the per-class quota.
SubsetManifest build_subset(const DatasetIndex& index, const SubsetSpec& spec);

void save_subset_manifest(const SubsetManifest& manifest, const std::filesystem::path& path);
SubsetManifest load_subset_manifest(const std::filesystem::path& path);

struct ClassifierSpec {
    enum class Type { Svm, Forest };
    Type type = Type::Svm;
    std::string name;  // report label, e.g. "Polynomial" or "RFC"
    KernelSpec kernel;
    SvmParams svm;
    ForestParams forest;
};

/// RFC, Linear, Polynomial, Sigmoid, Gaussian — the evaluated grid rows.
std::vector<ClassifierSpec> default_classifier_grid(uint64_t seed);

struct FeaturizedSubset {
    std::vector<std::vector<double>> train_x, test_x;
    std::vector<int> train_y, test_y;
    uint32_t dim = 0;
};

/// Window features for every manifest entry, split into train/test. The
/// scaler, when the spec asks for one, is fit on the training rows only.
FeaturizedSubset featurize_subset(const DatasetIndex& index, const SubsetManifest& manifest,
                                  const FeatureSpec& spec);

struct ReportRow {
    std::string attributes;
    std::string classifier;
    double precision = 0.0;
    double recall = 0.0;
    double test_accuracy = 0.0;
    double time_ms = 0.0;
    int train_n = 0;
    int test_n = 0;
    std::string error;  // nonempty when this configuration failed
};

struct RunConfig {
    std::filesystem::path dataset_root;
    std::filesystem::path layout_path;
    std::filesystem::path out_dir;
    SubsetSpec subset;
    std::vector<FeatureSpec> feature_specs;
    std::vector<ClassifierSpec> classifiers;
    int bench_repeats = 3;
    uint64_t seed = 0;
};

RunConfig load_run_config(const std::filesystem::path& path);

/// Train and evaluate every attribute-set x classifier configuration.
/// Per-configuration failures land in the row's error field; the grid keeps
/// going. Models are serialized under out_dir when it is nonempty.
std::vector<ReportRow> run_train_eval(const DatasetIndex& index, const SubsetManifest& manifest,
                                      const RunConfig& config);

/// attributes,classifier,precision,recall,test_accuracy,time_ms,train_n,test_n,error
void write_report_csv(std::ostream& sink, const std::vector<ReportRow>& rows);
void write_report_json(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

}  // namespace drowsy

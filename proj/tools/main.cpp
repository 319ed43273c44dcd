// Command-line front end for the drowsiness-detection pipeline.
//
// Subcommands: index, subset, featurize, train-eval, perclos, bench.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "drowsy/attention.hpp"
#include "drowsy/features.hpp"
#include "drowsy/ingest.hpp"
#include "drowsy/metrics.hpp"
#include "drowsy/model_io.hpp"
#include "drowsy/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void print_error_record(const std::string& kind, const std::string& message) {
    json j{{"error", kind}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

int cmd_index(const std::string& root, const std::string& layout_path, const std::string& out) {
    drowsy::LayoutConfig layout;
    if (!layout_path.empty()) layout = drowsy::load_layout_config(layout_path);
    auto index = drowsy::scan_dataset(root, layout);
    drowsy::save_dataset_index(index, out);
    std::cout << "indexed " << index.recordings.size() << " recordings (hog_dim "
              << index.hog_dim << ") -> " << out << "\n";
    return 0;
}

int cmd_subset(const std::string& manifest_path, const drowsy::SubsetSpec& spec,
               const std::string& out) {
    auto index = drowsy::load_dataset_index(manifest_path);
    auto manifest = drowsy::build_subset(index, spec);
    drowsy::save_subset_manifest(manifest, out);
    std::cout << "subset: " << manifest.entries.size() << " anchors ("
              << manifest.window_dropped << " dropped for missing history) -> " << out << "\n";
    return 0;
}

int cmd_featurize(const std::string& manifest_path, const std::string& subset_path,
                  const drowsy::FeatureSpec& spec, const std::string& out_prefix) {
    auto index = drowsy::load_dataset_index(manifest_path);
    auto subset = drowsy::load_subset_manifest(subset_path);
    auto features = drowsy::featurize_subset(index, subset, spec);
    auto tag = static_cast<uint32_t>(spec.attribute_set);
    drowsy::save_feature_matrix(out_prefix + "_train.dfm", features.train_x, tag);
    drowsy::save_feature_matrix(out_prefix + "_test.dfm", features.test_x, tag);
    std::ofstream labels(out_prefix + "_labels.csv");
    labels << "split,label\n";
    for (int y : features.train_y) labels << "train," << y << "\n";
    for (int y : features.test_y) labels << "test," << y << "\n";
    std::cout << "featurized " << features.train_x.size() << " train + "
              << features.test_x.size() << " test rows, dim " << features.dim << "\n";
    return 0;
}

int cmd_train_eval(const std::string& manifest_path, const std::string& subset_path,
                   const std::string& config_path, const std::string& out_dir, uint64_t seed) {
    auto index = drowsy::load_dataset_index(manifest_path);
    auto subset = drowsy::load_subset_manifest(subset_path);
    drowsy::RunConfig config;
    if (!config_path.empty()) {
        config = drowsy::load_run_config(config_path);
    } else {
        for (auto a :
             {drowsy::AttributeSet::AU, drowsy::AttributeSet::HOG, drowsy::AttributeSet::HOG_AND_AU}) {
            drowsy::FeatureSpec f;
            f.attribute_set = a;
            config.feature_specs.push_back(f);
        }
        config.classifiers = drowsy::default_classifier_grid(seed);
        config.seed = seed;
    }
    config.out_dir = out_dir;
    fs::create_directories(out_dir);
    auto rows = drowsy::run_train_eval(index, subset, config);

    std::ofstream csv(fs::path(out_dir) / "report.csv");
    drowsy::write_report_csv(csv, rows);
    drowsy::write_report_json(fs::path(out_dir) / "report.json", rows);
    drowsy::write_report_csv(std::cout, rows);

    bool any_failed = false;
    for (const auto& r : rows) {
        if (!r.error.empty()) any_failed = true;
    }
    if (any_failed) {
        print_error_record("PartialGrid", "one or more configurations failed; see report");
    }
    return 0;
}

int cmd_perclos(const std::string& manifest_path, double window_s, double stride_s,
                bool presence_mode, const std::string& out_dir) {
    auto index = drowsy::load_dataset_index(manifest_path);
    fs::create_directories(out_dir);
    int written = 0, skipped = 0;
    for (const auto& rec : index.recordings) {
        std::ifstream in(rec.au_path);
        if (!in) {
            print_error_record("Io", "cannot open " + rec.au_path);
            ++skipped;
            continue;
        }
        auto parsed = drowsy::parse_au_csv(in);
        drowsy::ClosureSeries series;
        series.fps = 30.0;
        if (parsed.frames.size() >= 2) {
            double dt = (parsed.frames.back().timestamp_s - parsed.frames.front().timestamp_s) /
                        static_cast<double>(parsed.frames.size() - 1);
            if (dt > 0) series.fps = 1.0 / dt;
        }
        for (const auto& f : parsed.frames) {
            double closure =
                presence_mode
                    ? drowsy::closure_from_au45_presence(f.au_presence[drowsy::kNumPresenceAus - 1])
                    : drowsy::closure_from_au45(f.au_intensity[drowsy::kAu45IntensityIndex]);
            series.values.push_back(closure);
            series.valid.push_back(f.success);
        }
        try {
            auto reports = drowsy::perclos(series, window_s, stride_s);
            fs::path out = fs::path(out_dir) / (rec.subject_id + "_" +
                                                std::to_string(rec.scale_value) + "_perclos.csv");
            std::ofstream sink(out);
            drowsy::write_perclos_csv(sink, reports);
            ++written;
        } catch (const drowsy::Error& e) {
            if (e.kind() != drowsy::ErrorKind::SeriesTooShort) throw;
            print_error_record("SeriesTooShort", rec.subject_id + "/" +
                                                     std::to_string(rec.scale_value) + ": " +
                                                     e.what());
            ++skipped;
        }
    }
    std::cout << "perclos: " << written << " recordings written, " << skipped << " skipped\n";
    return 0;
}

int cmd_bench(const std::string& model_path, const std::string& features_path, int repeats) {
    auto matrix = drowsy::load_feature_matrix(features_path);
    if (matrix.rows.empty()) {
        throw drowsy::Error(drowsy::ErrorKind::InvalidCount, "feature file has no rows");
    }

    std::function<void(const std::vector<double>&)> predict_one;
    std::ifstream peek(model_path);
    if (!peek) throw drowsy::Error(drowsy::ErrorKind::Io, "cannot open " + model_path);
    json header;
    peek >> header;
    std::string format = header.value("format", "");
    if (format == "drowsy-svm-v1") {
        auto model = drowsy::load_svm(model_path);
        predict_one = [model](const std::vector<double>& x) { (void)drowsy::predict(model, x); };
    } else if (format == "drowsy-forest-v1") {
        auto forest = drowsy::load_forest(model_path);
        predict_one = [forest](const std::vector<double>& x) {
            (void)drowsy::predict_forest(forest, x);
        };
    } else {
        throw drowsy::Error(drowsy::ErrorKind::Format, "unrecognized model format in " + model_path);
    }

    auto stats = drowsy::time_predictions(predict_one, matrix.rows, repeats);
    json j{{"mean_ms", stats.mean_ms}, {"p95_ms", stats.p95_ms}, {"samples", stats.samples}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drowsiness-detection pipeline"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for all stochastic stages")->capture_default_str();

    std::string root, layout_path, out, manifest_path, subset_path, config_path;
    std::string attributes = "AU", model_path, features_path;
    bool no_presence = false, no_standardize = false, presence_mode = false;
    drowsy::SubsetSpec subset_spec;
    double window_s = 60.0, stride_s = 60.0;
    int repeats = 3;

    auto* index_cmd = app.add_subcommand("index", "index a dataset directory into a manifest");
    index_cmd->add_option("root", root, "dataset root directory")->required();
    index_cmd->add_option("--layout", layout_path, "layout config JSON");
    index_cmd->add_option("--out", out, "manifest output path")->required();

    auto* subset_cmd = app.add_subcommand("subset", "sample anchors into a subset manifest");
    subset_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
    subset_cmd->add_option("--out", out, "subset manifest output path")->required();
    subset_cmd->add_option("--frame-min", subset_spec.frame_min)->capture_default_str();
    subset_cmd->add_option("--frame-max", subset_spec.frame_max)->capture_default_str();
    subset_cmd->add_option("--per-class", subset_spec.per_class)->capture_default_str();
    subset_cmd->add_option("--split-frame", subset_spec.split_frame)->capture_default_str();
    subset_cmd->add_option("--window-len", subset_spec.window_len)->capture_default_str();

    auto* feat_cmd = app.add_subcommand("featurize", "write train/test feature matrices");
    feat_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
    feat_cmd->add_option("--subset", subset_path, "subset manifest")->required();
    feat_cmd->add_option("--attributes", attributes, "AU | HOG | HOG_AND_AU")
        ->capture_default_str();
    feat_cmd->add_flag("--no-presence", no_presence, "drop the 18 presence dimensions");
    feat_cmd->add_flag("--no-standardize", no_standardize, "skip train-split standardization");
    feat_cmd->add_option("--out", out, "output path prefix")->required();

    auto* train_cmd = app.add_subcommand("train-eval", "train and evaluate the classifier grid");
    train_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
    train_cmd->add_option("--subset", subset_path, "subset manifest")->required();
    train_cmd->add_option("--config", config_path, "run config JSON");
    train_cmd->add_option("--out", out, "output directory")->required();

    auto* perclos_cmd = app.add_subcommand("perclos", "PERCLOS CSV per recording");
    perclos_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
    perclos_cmd->add_option("--window", window_s, "window length in seconds")
        ->capture_default_str();
    perclos_cmd->add_option("--stride", stride_s, "stride in seconds")->capture_default_str();
    perclos_cmd->add_flag("--presence", presence_mode, "use binary AU45 presence, not intensity");
    perclos_cmd->add_option("--out", out, "output directory")->required();

    auto* bench_cmd = app.add_subcommand("bench", "per-sample prediction latency");
    bench_cmd->add_option("--model", model_path, "serialized model file")->required();
    bench_cmd->add_option("--features", features_path, "feature matrix file")->required();
    bench_cmd->add_option("--repeats", repeats, "timed passes")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // CLI11 prints usage
        return code == 0 ? 0 : 1;
    }

    subset_spec.seed = seed;
    try {
        if (index_cmd->parsed()) return cmd_index(root, layout_path, out);
        if (subset_cmd->parsed()) return cmd_subset(manifest_path, subset_spec, out);
        if (feat_cmd->parsed()) {
            drowsy::FeatureSpec spec;
            spec.attribute_set = drowsy::attribute_set_from_string(attributes);
            spec.include_presence = !no_presence;
            spec.standardize = !no_standardize;
            return cmd_featurize(manifest_path, subset_path, spec, out);
        }
        if (train_cmd->parsed())
            return cmd_train_eval(manifest_path, subset_path, config_path, out, seed);
        if (perclos_cmd->parsed())
            return cmd_perclos(manifest_path, window_s, stride_s, presence_mode, out);
        if (bench_cmd->parsed()) return cmd_bench(model_path, features_path, repeats);
    } catch (const drowsy::Error& e) {
        print_error_record(to_string(e.kind()), e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error_record("Internal", e.what());
        return 3;
    }
    return 1;
}

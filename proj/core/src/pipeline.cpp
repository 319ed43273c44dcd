#include "drowsy/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "drowsy/metrics.hpp"
#include "drowsy/model_io.hpp"

namespace drowsy {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<FrameFeatures> load_au_frames(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open AU export " + path);
    return parse_au_csv(in).frames;
}

std::vector<FrameFeatures> load_joined_frames(const RecordingMeta& rec, bool need_hog) {
    auto frames = load_au_frames(rec.au_path);
    if (!need_hog) return frames;
    if (rec.hog_path.empty()) {
        throw Error(ErrorKind::MissingHog, "recording " + rec.subject_id + "/" +
                                               std::to_string(rec.scale_value) +
                                               " has no HOG export");
    }
    std::ifstream in(rec.hog_path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open HOG export " + rec.hog_path);
    auto hog = parse_hog_stream(in);
    return join_features(frames, hog);
}

uint64_t class_seed(uint64_t base, int class_index) {
    return base ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(class_index + 1));
}

}  // namespace

SubsetManifest build_subset(const DatasetIndex& index, const SubsetSpec& spec) {
    SubsetManifest manifest;
    manifest.spec = spec;

    struct ClassPool {
        std::vector<const RecordingMeta*> recordings;
        std::vector<std::vector<int64_t>> available;  // frames within range, per recording
    };
    std::map<int, ClassPool> pools;  // class index -> pool
    std::map<std::string, std::vector<FrameFeatures>> frame_cache;

    for (const auto& rec : index.recordings) {
        if (rec.label == ClassLabel::Unlabeled) continue;
        auto& pool = pools[static_cast<int>(rec.label)];
        auto& frames = frame_cache[rec.au_path];
        if (frames.empty()) frames = load_au_frames(rec.au_path);
        std::vector<int64_t> avail;
        for (const auto& f : frames) {
            if (f.frame_index >= spec.frame_min && f.frame_index <= spec.frame_max) {
                avail.push_back(f.frame_index);
            }
        }
        pool.recordings.push_back(&rec);
        pool.available.push_back(std::move(avail));
    }

    std::set<std::string> subjects;
    for (const auto& rec : index.recordings) subjects.insert(rec.subject_id);
    FoldAssignment folds =
        assign_folds(std::vector<std::string>(subjects.begin(), subjects.end()), 12, spec.seed);

    for (auto& [class_index, pool] : pools) {
        size_t pool_size = 0;
        for (const auto& a : pool.available) pool_size += a.size();
        if (pool_size < static_cast<size_t>(spec.per_class)) {
            throw Error(ErrorKind::InsufficientFrames,
                        std::string(to_string(static_cast<ClassLabel>(class_index))) + " pool has " +
                            std::to_string(pool_size) + " frames, quota is " +
                            std::to_string(spec.per_class));
        }

        std::vector<int64_t> timestamps =
            spec.per_class >= 2
                ? equally_dispersed_timestamps(spec.frame_min, spec.frame_max, spec.per_class)
                : std::vector<int64_t>{spec.frame_min};
        std::mt19937_64 rng(class_seed(spec.seed, class_index));

        size_t rotation = 0;
        for (size_t i = 0; i < timestamps.size(); ++i) {
            bool last = i + 1 == timestamps.size();
            int64_t lo = timestamps[i];
            int64_t hi = last ? spec.frame_max : timestamps[i + 1];
            // Round-robin over the class's recordings, skipping empty ones.
            size_t tried = 0;
            size_t r = rotation;
            while (pool.available[r % pool.recordings.size()].empty() &&
                   tried < pool.recordings.size()) {
                ++r;
                ++tried;
            }
            rotation = r + 1;
            size_t rec_idx = r % pool.recordings.size();
            const RecordingMeta& rec = *pool.recordings[rec_idx];

            SubsetEntry entry;
            entry.subject_id = rec.subject_id;
            entry.scale_value = rec.scale_value;
            entry.label = rec.label;
            entry.anchor_frame = pick_in_bin(pool.available[rec_idx], lo, hi, last, rng);
            entry.train = entry.anchor_frame < spec.split_frame;
            entry.fold = folds.fold_of_subject.at(rec.subject_id);

            // Window-history check against the source recording.
            const auto& frames = frame_cache.at(rec.au_path);
            auto built = make_windows(frames, {entry.anchor_frame}, spec.window_len);
            if (built.windows.empty()) {
                ++manifest.window_dropped;
                continue;
            }
            manifest.entries.push_back(std::move(entry));
        }
    }
    return manifest;
}

void save_subset_manifest(const SubsetManifest& manifest, const fs::path& path) {
    json j;
    j["format"] = "drowsy-subset-v1";
    j["spec"] = {{"frame_min", manifest.spec.frame_min}, {"frame_max", manifest.spec.frame_max},
                 {"per_class", manifest.spec.per_class}, {"split_frame", manifest.spec.split_frame},
                 {"window_len", manifest.spec.window_len}, {"seed", manifest.spec.seed}};
    j["window_dropped"] = manifest.window_dropped;
    j["entries"] = json::array();
    for (const auto& e : manifest.entries) {
        j["entries"].push_back(json{{"subject_id", e.subject_id},
                                    {"scale_value", e.scale_value},
                                    {"label", to_string(e.label)},
                                    {"anchor_frame", e.anchor_frame},
                                    {"split", e.train ? "train" : "test"},
                                    {"fold", e.fold}});
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << j.dump(2) << "\n";
}

SubsetManifest load_subset_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open subset manifest " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, path.string() + ": " + e.what());
    }
    if (j.value("format", "") != "drowsy-subset-v1") {
        throw Error(ErrorKind::Format, "unexpected subset format tag in " + path.string());
    }
    SubsetManifest m;
    const auto& s = j.at("spec");
    m.spec.frame_min = s.at("frame_min").get<int64_t>();
    m.spec.frame_max = s.at("frame_max").get<int64_t>();
    m.spec.per_class = s.at("per_class").get<int>();
    m.spec.split_frame = s.at("split_frame").get<int64_t>();
    m.spec.window_len = s.at("window_len").get<int>();
    m.spec.seed = s.at("seed").get<uint64_t>();
    m.window_dropped = j.value("window_dropped", 0);
    for (const auto& ej : j.at("entries")) {
        SubsetEntry e;
        e.subject_id = ej.at("subject_id").get<std::string>();
        e.scale_value = ej.at("scale_value").get<int>();
        e.label = class_label_from_string(ej.at("label").get<std::string>());
        e.anchor_frame = ej.at("anchor_frame").get<int64_t>();
        e.train = ej.at("split").get<std::string>() == "train";
        e.fold = ej.value("fold", 0);
        m.entries.push_back(std::move(e));
    }
    return m;
}

std::vector<ClassifierSpec> default_classifier_grid(uint64_t seed) {
    std::vector<ClassifierSpec> grid;
    {
        ClassifierSpec rfc;
        rfc.type = ClassifierSpec::Type::Forest;
        rfc.name = "RFC";
        rfc.forest.seed = seed;
        grid.push_back(rfc);
    }
    for (KernelKind kind :
         {KernelKind::Linear, KernelKind::Polynomial, KernelKind::Sigmoid, KernelKind::Rbf}) {
        ClassifierSpec svm;
        svm.type = ClassifierSpec::Type::Svm;
        svm.name = to_string(kind);
        svm.kernel.kind = kind;
        svm.svm.seed = seed;
        grid.push_back(svm);
    }
    return grid;
}

FeaturizedSubset featurize_subset(const DatasetIndex& index, const SubsetManifest& manifest,
                                  const FeatureSpec& spec) {
    bool need_hog = spec.attribute_set != AttributeSet::AU;

    std::map<std::pair<std::string, int>, const RecordingMeta*> by_key;
    for (const auto& rec : index.recordings) {
        by_key[{rec.subject_id, rec.scale_value}] = &rec;
    }
    std::map<std::string, std::vector<FrameFeatures>> frame_cache;

    FeaturizedSubset out;
    for (const auto& entry : manifest.entries) {
        auto it = by_key.find({entry.subject_id, entry.scale_value});
        if (it == by_key.end()) {
            throw Error(ErrorKind::UnknownLabel,
                        "subset entry (" + entry.subject_id + ", " +
                            std::to_string(entry.scale_value) + ") not in dataset index");
        }
        const RecordingMeta& rec = *it->second;
        auto& frames = frame_cache[rec.au_path];
        if (frames.empty()) frames = load_joined_frames(rec, need_hog);
        auto built = make_windows(frames, {entry.anchor_frame}, manifest.spec.window_len,
                                  entry.label, entry.subject_id);
        if (built.windows.empty()) {
            throw Error(ErrorKind::InsufficientFrames,
                        "no window for anchor " + std::to_string(entry.anchor_frame) + " of " +
                            entry.subject_id);
        }
        auto v = window_vector(built.windows.front(), spec);
        if (out.dim == 0) out.dim = static_cast<uint32_t>(v.size());
        if (entry.train) {
            out.train_x.push_back(std::move(v));
            out.train_y.push_back(static_cast<int>(entry.label));
        } else {
            out.test_x.push_back(std::move(v));
            out.test_y.push_back(static_cast<int>(entry.label));
        }
    }

    if (spec.standardize && !out.train_x.empty()) {
        Scaler scaler = fit_scaler(out.train_x);
        for (auto& v : out.train_x) v = scaler.apply(v);
        for (auto& v : out.test_x) v = scaler.apply(v);
    }
    return out;
}

std::vector<ReportRow> run_train_eval(const DatasetIndex& index, const SubsetManifest& manifest,
                                      const RunConfig& config) {
    std::vector<ReportRow> rows;
    for (const auto& fspec_in : config.feature_specs) {
        FeatureSpec fspec = fspec_in;
        FeaturizedSubset features;
        std::string featurize_error;
        try {
            features = featurize_subset(index, manifest, fspec);
        } catch (const Error& e) {
            featurize_error = e.what();
        }

        for (const auto& clf : config.classifiers) {
            ReportRow row;
            row.attributes = to_string(fspec.attribute_set);
            row.classifier = clf.name;
            if (!featurize_error.empty()) {
                row.error = featurize_error;
                rows.push_back(std::move(row));
                continue;
            }
            row.train_n = static_cast<int>(features.train_x.size());
            row.test_n = static_cast<int>(features.test_x.size());
            try {
                if (features.train_x.empty() || features.test_x.empty()) {
                    throw Error(ErrorKind::InsufficientFrames, "empty train or test split");
                }
                std::vector<int> preds;
                std::function<void(const std::vector<double>&)> predict_one;
                fs::path model_path;

                if (clf.type == ClassifierSpec::Type::Svm) {
                    auto model =
                        train_multiclass(features.train_x, features.train_y, clf.kernel, clf.svm);
                    for (const auto& x : features.test_x) preds.push_back(predict(model, x));
                    predict_one = [model](const std::vector<double>& x) { (void)predict(model, x); };
                    if (!config.out_dir.empty()) {
                        model_path = config.out_dir /
                                     (row.attributes + "_" + row.classifier + ".model.json");
                        save_svm(model, model_path);
                    }
                } else {
                    auto forest =
                        train_random_forest(features.train_x, features.train_y, clf.forest);
                    for (const auto& x : features.test_x) preds.push_back(predict_forest(forest, x));
                    predict_one = [forest](const std::vector<double>& x) {
                        (void)predict_forest(forest, x);
                    };
                    if (!config.out_dir.empty()) {
                        model_path = config.out_dir /
                                     (row.attributes + "_" + row.classifier + ".model.json");
                        save_forest(forest, model_path);
                    }
                }

                int num_classes =
                    *std::max_element(features.train_y.begin(), features.train_y.end()) + 1;
                num_classes = std::max(
                    num_classes,
                    *std::max_element(features.test_y.begin(), features.test_y.end()) + 1);
                auto cm = confusion(features.test_y, preds, num_classes);
                row.precision = weighted_precision(cm);
                row.recall = weighted_recall(cm);
                row.test_accuracy = accuracy(cm);

                size_t timed = std::min<size_t>(features.test_x.size(), 64);
                std::vector<std::vector<double>> timing_samples(features.test_x.begin(),
                                                                features.test_x.begin() + timed);
                row.time_ms =
                    time_predictions(predict_one, timing_samples, config.bench_repeats).mean_ms;
            } catch (const Error& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

RunConfig load_run_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, path.string() + ": " + e.what());
    }
    RunConfig cfg;
    cfg.dataset_root = j.value("dataset_root", "");
    cfg.layout_path = j.value("layout", "");
    cfg.out_dir = j.value("out_dir", "");
    cfg.seed = j.value("seed", 0ull);
    cfg.bench_repeats = j.value("bench_repeats", 3);
    if (j.contains("subset")) {
        const auto& s = j.at("subset");
        cfg.subset.frame_min = s.value("frame_min", cfg.subset.frame_min);
        cfg.subset.frame_max = s.value("frame_max", cfg.subset.frame_max);
        cfg.subset.per_class = s.value("per_class", cfg.subset.per_class);
        cfg.subset.split_frame = s.value("split_frame", cfg.subset.split_frame);
        cfg.subset.window_len = s.value("window_len", cfg.subset.window_len);
    }
    cfg.subset.seed = cfg.seed;
    if (j.contains("attribute_sets")) {
        for (const auto& a : j.at("attribute_sets")) {
            FeatureSpec f;
            f.attribute_set = attribute_set_from_string(a.get<std::string>());
            cfg.feature_specs.push_back(f);
        }
    } else {
        for (auto a : {AttributeSet::AU, AttributeSet::HOG, AttributeSet::HOG_AND_AU}) {
            FeatureSpec f;
            f.attribute_set = a;
            cfg.feature_specs.push_back(f);
        }
    }
    cfg.classifiers = default_classifier_grid(cfg.seed);
    if (j.contains("svm")) {
        const auto& s = j.at("svm");
        for (auto& clf : cfg.classifiers) {
            if (clf.type != ClassifierSpec::Type::Svm) continue;
            clf.svm.c = s.value("c", clf.svm.c);
            clf.svm.tol = s.value("tol", clf.svm.tol);
            clf.svm.max_passes = s.value("max_passes", clf.svm.max_passes);
            clf.kernel.gamma = s.value("gamma", clf.kernel.gamma);
            clf.kernel.degree = s.value("degree", clf.kernel.degree);
            clf.kernel.coef0 = s.value("coef0", clf.kernel.coef0);
        }
    }
    if (j.contains("forest")) {
        const auto& f = j.at("forest");
        for (auto& clf : cfg.classifiers) {
            if (clf.type != ClassifierSpec::Type::Forest) continue;
            clf.forest.trees = f.value("trees", clf.forest.trees);
            clf.forest.max_depth = f.value("max_depth", clf.forest.max_depth);
            clf.forest.features_per_split =
                f.value("features_per_split", clf.forest.features_per_split);
        }
    }
    return cfg;
}

void write_report_csv(std::ostream& sink, const std::vector<ReportRow>& rows) {
    sink << "attributes,classifier,precision,recall,test_accuracy,time_ms,train_n,test_n,error\n";
    sink << std::setprecision(10);
    for (const auto& r : rows) {
        sink << r.attributes << ',' << r.classifier << ',' << r.precision << ',' << r.recall << ','
             << r.test_accuracy << ',' << r.time_ms << ',' << r.train_n << ',' << r.test_n << ','
             << r.error << '\n';
    }
}

void write_report_json(const fs::path& path, const std::vector<ReportRow>& rows) {
    json j = json::array();
    for (const auto& r : rows) {
        j.push_back(json{{"attributes", r.attributes},
                         {"classifier", r.classifier},
                         {"precision", r.precision},
                         {"recall", r.recall},
                         {"test_accuracy", r.test_accuracy},
                         {"time_ms", r.time_ms},
                         {"train_n", r.train_n},
                         {"test_n", r.test_n},
                         {"error", r.error}});
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write report " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace drowsy

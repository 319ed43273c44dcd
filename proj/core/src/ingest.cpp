#include "drowsy/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "drowsy/attention.hpp"

namespace drowsy {

namespace fs = std::filesystem;
using nlohmann::json;

ClassLabel class_label_from_string(const std::string& s) {
    if (s == "Alert") return ClassLabel::Alert;
    if (s == "LowVigilance") return ClassLabel::LowVigilance;
    if (s == "Drowsy") return ClassLabel::Drowsy;
    if (s == "Unlabeled") return ClassLabel::Unlabeled;
    throw Error(ErrorKind::UnknownLabel, "unknown class label '" + s + "'");
}

namespace {

std::string trim(std::string_view v) {
    size_t a = v.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) return {};
    size_t b = v.find_last_not_of(" \t\r\n");
    return std::string(v.substr(a, b - a + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) cells.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, size_t row) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw Error(ErrorKind::MalformedRow,
                    "non-numeric cell '" + cell + "' at data row " + std::to_string(row));
    }
    return value;
}

std::string au_column(int au, char suffix) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "AU%02d_%c", au, suffix);
    return buf;
}

}  // namespace

AuParseResult parse_au_csv(std::istream& source) {
    std::string header_line;
    if (!std::getline(source, header_line)) {
        throw Error(ErrorKind::MissingColumn, "empty input, no header row");
    }
    auto names = split_csv_line(header_line);
    std::map<std::string, size_t> col;
    for (size_t i = 0; i < names.size(); ++i) col[names[i]] = i;

    auto require = [&](const std::string& name) -> size_t {
        auto it = col.find(name);
        if (it == col.end()) {
            throw Error(ErrorKind::MissingColumn, "required column '" + name + "' absent");
        }
        return it->second;
    };

    size_t c_frame = require("frame");
    size_t c_time = require("timestamp");
    size_t c_conf = require("confidence");
    size_t c_success = require("success");
    std::array<size_t, kNumIntensityAus> c_int{};
    std::array<size_t, kNumPresenceAus> c_pres{};
    for (size_t i = 0; i < kNumIntensityAus; ++i) c_int[i] = require(au_column(kIntensityAus[i], 'r'));
    for (size_t i = 0; i < kNumPresenceAus; ++i) c_pres[i] = require(au_column(kPresenceAus[i], 'c'));

    AuParseResult out;
    std::string line;
    size_t row = 0;
    while (std::getline(source, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() < names.size()) {
            throw Error(ErrorKind::MalformedRow,
                        "row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                            " cells, header has " + std::to_string(names.size()));
        }
        FrameFeatures f;
        f.frame_index = static_cast<int64_t>(parse_cell(cells[c_frame], row));
        f.timestamp_s = parse_cell(cells[c_time], row);
        f.confidence = parse_cell(cells[c_conf], row);
        f.success = parse_cell(cells[c_success], row) != 0.0;
        for (size_t i = 0; i < kNumIntensityAus; ++i) {
            double v = parse_cell(cells[c_int[i]], row);
            if (v < 0.0 || v > 5.0) {
                v = std::clamp(v, 0.0, 5.0);
                ++out.clamped;
            }
            f.au_intensity[i] = v;
        }
        for (size_t i = 0; i < kNumPresenceAus; ++i) {
            f.au_presence[i] = parse_cell(cells[c_pres[i]], row) != 0.0 ? 1.0 : 0.0;
        }
        out.frames.push_back(std::move(f));
        ++row;
    }
    return out;
}

namespace {

template <typename T>
bool read_le(std::istream& in, T& out) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
    uint64_t v = 0;
    for (size_t i = 0; i < sizeof(T); ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
    if constexpr (std::is_same_v<T, float>) {
        uint32_t u = static_cast<uint32_t>(v);
        std::memcpy(&out, &u, 4);
    } else {
        out = static_cast<T>(v);
    }
    return true;
}

template <typename T>
void write_le(std::ostream& out, T value) {
    uint64_t v;
    if constexpr (std::is_same_v<T, float>) {
        uint32_t u;
        std::memcpy(&u, &value, 4);
        v = u;
    } else {
        v = static_cast<uint64_t>(value);
    }
    unsigned char buf[sizeof(T)];
    for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

}  // namespace

std::vector<HogFrame> parse_hog_stream(std::istream& source) {
    std::vector<HogFrame> frames;
    int64_t offset = 0;
    for (;;) {
        uint32_t cols = 0;
        if (!read_le(source, cols)) break;  // clean end of stream
        HogFrame f;
        f.cols = cols;
        uint32_t rows = 0, channels = 0;
        float validity = 0.0f;
        if (!read_le(source, rows) || !read_le(source, channels) || !read_le(source, validity)) {
            throw Error(ErrorKind::TruncatedRecord,
                        "record header truncated at byte offset " + std::to_string(offset));
        }
        f.rows = rows;
        f.channels = channels;
        f.valid = validity != 0.0f;
        size_t n = static_cast<size_t>(rows) * cols * channels;
        f.values.resize(n);
        for (size_t i = 0; i < n; ++i) {
            if (!read_le(source, f.values[i])) {
                throw Error(ErrorKind::TruncatedRecord,
                            "record truncated after " + std::to_string(i) +
                                " floats, record starts at byte offset " + std::to_string(offset));
            }
        }
        if (!frames.empty()) {
            const auto& first = frames.front();
            if (f.rows != first.rows || f.cols != first.cols || f.channels != first.channels) {
                throw Error(ErrorKind::DimensionMismatch,
                            "dimensions change at frame " + std::to_string(frames.size()));
            }
        }
        f.frame_index = static_cast<int64_t>(frames.size());
        offset += 16 + static_cast<int64_t>(n) * 4;
        frames.push_back(std::move(f));
    }
    return frames;
}

void write_hog(std::ostream& sink, const std::vector<HogFrame>& frames) {
    for (const auto& f : frames) {
        write_le(sink, f.cols);
        write_le(sink, f.rows);
        write_le(sink, f.channels);
        write_le(sink, f.valid ? 1.0f : 0.0f);
        for (float v : f.values) write_le(sink, v);
    }
}

std::vector<FrameFeatures> join_features(const std::vector<FrameFeatures>& au,
                                         const std::vector<HogFrame>& hog, int slack) {
    auto diff = static_cast<int64_t>(au.size()) - static_cast<int64_t>(hog.size());
    if (std::llabs(diff) > slack) {
        throw Error(ErrorKind::LengthMismatch,
                    std::to_string(au.size()) + " AU frames vs " + std::to_string(hog.size()) +
                        " HOG frames exceeds slack " + std::to_string(slack));
    }
    size_t n = std::min(au.size(), hog.size());
    std::vector<FrameFeatures> joined(au.begin(), au.begin() + n);
    for (size_t i = 0; i < n; ++i) {
        joined[i].hog = hog[i].values;
        if (!hog[i].valid) joined[i].success = false;
    }
    return joined;
}

LayoutConfig load_layout_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open layout config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, "layout config " + path.string() + ": " + e.what());
    }
    LayoutConfig cfg;
    cfg.pattern = j.value("pattern", cfg.pattern);
    cfg.subject_group = j.value("subject_group", cfg.subject_group);
    cfg.scale_group = j.value("scale_group", cfg.scale_group);
    cfg.hog_suffix = j.value("hog_suffix", cfg.hog_suffix);
    return cfg;
}

DatasetIndex scan_dataset(const fs::path& root, const LayoutConfig& layout) {
    DatasetIndex index;
    if (!fs::exists(root)) throw Error(ErrorKind::Io, "dataset root " + root.string() + " missing");
    std::regex re;
    try {
        re = std::regex(layout.pattern);
    } catch (const std::regex_error& e) {
        throw Error(ErrorKind::Format, std::string("bad layout pattern: ") + e.what());
    }

    std::vector<fs::path> candidates;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            candidates.push_back(entry.path());
        }
    }
    std::sort(candidates.begin(), candidates.end());

    std::map<std::pair<std::string, int>, std::string> seen;
    for (const auto& path : candidates) {
        std::string rel = fs::relative(path, root).generic_string();
        std::smatch m;
        if (!std::regex_match(rel, m, re)) {
            throw Error(ErrorKind::UnparseablePath,
                        "'" + rel + "' does not match layout pattern '" + layout.pattern + "'");
        }
        RecordingMeta rec;
        rec.subject_id = m[layout.subject_group].str();
        try {
            rec.scale_value = std::stoi(m[layout.scale_group].str());
        } catch (const std::exception&) {
            throw Error(ErrorKind::UnparseablePath, "scale value not an integer in '" + rel + "'");
        }
        rec.label = classify_scale(rec.scale_value);
        rec.au_path = path.string();
        fs::path hog = path;
        hog.replace_extension(layout.hog_suffix);
        if (fs::exists(hog)) rec.hog_path = hog.string();

        auto key = std::make_pair(rec.subject_id, rec.scale_value);
        auto [it, inserted] = seen.emplace(key, rel);
        if (!inserted) {
            throw Error(ErrorKind::DuplicateRecording,
                        "'" + rel + "' duplicates (" + rec.subject_id + ", " +
                            std::to_string(rec.scale_value) + ") from '" + it->second + "'");
        }
        index.recordings.push_back(std::move(rec));
    }

    std::sort(index.recordings.begin(), index.recordings.end(),
              [](const RecordingMeta& a, const RecordingMeta& b) {
                  return std::tie(a.subject_id, a.scale_value) < std::tie(b.subject_id, b.scale_value);
              });

    for (const auto& rec : index.recordings) {
        if (rec.hog_path.empty()) continue;
        std::ifstream in(rec.hog_path, std::ios::binary);
        uint32_t cols = 0, rows = 0, channels = 0;
        if (!read_le(in, cols) || !read_le(in, rows) || !read_le(in, channels)) continue;
        uint32_t dim = rows * cols * channels;
        if (index.hog_dim == 0) {
            index.hog_dim = dim;
        } else if (index.hog_dim != dim) {
            throw Error(ErrorKind::DimensionMismatch,
                        "HOG dimension " + std::to_string(dim) + " in " + rec.hog_path +
                            " disagrees with " + std::to_string(index.hog_dim));
        }
    }
    return index;
}

void save_dataset_index(const DatasetIndex& index, const fs::path& path) {
    json j;
    j["format"] = "drowsy-manifest-v1";
    j["hog_dim"] = index.hog_dim;
    j["recordings"] = json::array();
    for (const auto& r : index.recordings) {
        json rec;
        rec["subject_id"] = r.subject_id;
        rec["scale_value"] = r.scale_value;
        rec["label"] = to_string(r.label);
        if (r.fold) rec["fold"] = *r.fold;
        rec["au_path"] = r.au_path;
        rec["hog_path"] = r.hog_path;
        j["recordings"].push_back(std::move(rec));
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << j.dump(2) << "\n";
}

DatasetIndex load_dataset_index(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open manifest " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, "manifest " + path.string() + ": " + e.what());
    }
    if (j.value("format", "") != "drowsy-manifest-v1") {
        throw Error(ErrorKind::Format, "unexpected manifest format tag in " + path.string());
    }
    DatasetIndex index;
    index.hog_dim = j.value("hog_dim", 0u);
    for (const auto& rec : j.at("recordings")) {
        RecordingMeta r;
        r.subject_id = rec.at("subject_id").get<std::string>();
        r.scale_value = rec.at("scale_value").get<int>();
        r.label = class_label_from_string(rec.at("label").get<std::string>());
        if (rec.contains("fold")) r.fold = rec.at("fold").get<int>();
        r.au_path = rec.value("au_path", "");
        r.hog_path = rec.value("hog_path", "");
        index.recordings.push_back(std::move(r));
    }
    return index;
}

}  // namespace drowsy

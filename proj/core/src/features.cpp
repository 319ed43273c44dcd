#include "drowsy/features.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace drowsy {

const char* to_string(AttributeSet a) {
    switch (a) {
        case AttributeSet::AU: return "AU";
        case AttributeSet::HOG: return "HOG";
        case AttributeSet::HOG_AND_AU: return "HOG_AND_AU";
    }
    return "Unknown";
}

AttributeSet attribute_set_from_string(const std::string& s) {
    if (s == "AU") return AttributeSet::AU;
    if (s == "HOG") return AttributeSet::HOG;
    if (s == "HOG_AND_AU" || s == "HOG & AU") return AttributeSet::HOG_AND_AU;
    throw Error(ErrorKind::Format, "unknown attribute set '" + s + "'");
}

namespace {

void append_au(std::vector<double>& out, const FrameFeatures& frame, bool include_presence) {
    out.insert(out.end(), frame.au_intensity.begin(), frame.au_intensity.end());
    if (include_presence) {
        out.insert(out.end(), frame.au_presence.begin(), frame.au_presence.end());
    }
}

void append_hog(std::vector<double>& out, const FrameFeatures& frame) {
    if (!frame.hog) {
        throw Error(ErrorKind::MissingHog,
                    "frame " + std::to_string(frame.frame_index) + " carries no HOG vector");
    }
    out.insert(out.end(), frame.hog->begin(), frame.hog->end());
}

}  // namespace

std::vector<double> frame_vector(const FrameFeatures& frame, const FeatureSpec& spec) {
    std::vector<double> out;
    switch (spec.attribute_set) {
        case AttributeSet::AU:
            append_au(out, frame, spec.include_presence);
            break;
        case AttributeSet::HOG:
            append_hog(out, frame);
            break;
        case AttributeSet::HOG_AND_AU:
            append_hog(out, frame);
            append_au(out, frame, spec.include_presence);
            break;
    }
    return out;
}

std::vector<double> window_vector(const WindowSample& window, const FeatureSpec& spec) {
    if (window.frames.empty()) throw Error(ErrorKind::EmptyWindow, "window has no frames");
    std::vector<double> sum = frame_vector(window.frames.front(), spec);
    for (size_t f = 1; f < window.frames.size(); ++f) {
        auto v = frame_vector(window.frames[f], spec);
        if (v.size() != sum.size()) {
            throw Error(ErrorKind::DimMismatch, "frame vectors disagree in dimension");
        }
        for (size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
    }
    double n = static_cast<double>(window.frames.size());
    for (double& v : sum) v /= n;
    return sum;
}

Scaler fit_scaler(const std::vector<std::vector<double>>& train) {
    if (train.empty()) throw Error(ErrorKind::InvalidCount, "cannot fit scaler on empty set");
    size_t dim = train.front().size();
    Scaler s;
    s.means.assign(dim, 0.0);
    s.stdevs.assign(dim, 0.0);
    for (const auto& row : train) {
        if (row.size() != dim) throw Error(ErrorKind::DimMismatch, "ragged training matrix");
        for (size_t i = 0; i < dim; ++i) s.means[i] += row[i];
    }
    double n = static_cast<double>(train.size());
    for (double& m : s.means) m /= n;
    for (const auto& row : train) {
        for (size_t i = 0; i < dim; ++i) {
            double d = row[i] - s.means[i];
            s.stdevs[i] += d * d;
        }
    }
    for (double& v : s.stdevs) {
        v = std::sqrt(v / n);  // population stdev
        if (v == 0.0) v = 1.0;
    }
    return s;
}

std::vector<double> Scaler::apply(const std::vector<double>& v) const {
    if (v.size() != means.size()) {
        throw Error(ErrorKind::DimMismatch, "vector dim " + std::to_string(v.size()) +
                                                " vs scaler dim " + std::to_string(means.size()));
    }
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - means[i]) / stdevs[i];
    return out;
}

namespace {

constexpr char kMatrixMagic[4] = {'D', 'F', 'M', '1'};

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

}  // namespace

void save_feature_matrix(const std::filesystem::path& path,
                         const std::vector<std::vector<double>>& rows, uint32_t spec_tag) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out.write(kMatrixMagic, 4);
    uint32_t dim = rows.empty() ? 0 : static_cast<uint32_t>(rows.front().size());
    write_le(out, spec_tag);
    write_le(out, dim);
    write_le(out, static_cast<uint64_t>(rows.size()));
    for (const auto& row : rows) {
        if (row.size() != dim) throw Error(ErrorKind::DimMismatch, "ragged feature matrix");
        for (double v : row) write_le(out, static_cast<float>(v));
    }
}

FeatureMatrix load_feature_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMatrixMagic, 4) != 0) {
        throw Error(ErrorKind::Format, path.string() + " is not a feature matrix file");
    }
    FeatureMatrix m;
    uint64_t rows = 0;
    if (!read_le(in, m.spec_tag) || !read_le(in, m.dim) || !read_le(in, rows)) {
        throw Error(ErrorKind::TruncatedRecord, "feature matrix header truncated");
    }
    m.rows.resize(rows, std::vector<double>(m.dim));
    for (auto& row : m.rows) {
        for (auto& v : row) {
            float f = 0.0f;
            if (!read_le(in, f)) {
                throw Error(ErrorKind::TruncatedRecord, "feature matrix data truncated");
            }
            v = f;
        }
    }
    return m;
}

}  // namespace drowsy

#include "drowsy/attention.hpp"

#include <cmath>
#include <ostream>

namespace drowsy {

std::vector<PerclosReport> perclos(const ClosureSeries& series, double window_s, double stride_s) {
    if (window_s <= 0.0 || stride_s <= 0.0) {
        throw Error(ErrorKind::InvalidCount, "window and stride must be positive");
    }
    if (series.fps <= 0.0) throw Error(ErrorKind::InvalidCount, "fps must be positive");
    auto window_frames = static_cast<size_t>(std::llround(window_s * series.fps));
    auto stride_frames = static_cast<size_t>(std::llround(stride_s * series.fps));
    if (window_frames == 0) window_frames = 1;
    if (stride_frames == 0) stride_frames = 1;
    if (series.values.size() < window_frames) {
        throw Error(ErrorKind::SeriesTooShort,
                    std::to_string(series.values.size()) + " frames, window needs " +
                        std::to_string(window_frames));
    }

    std::vector<PerclosReport> reports;
    for (size_t start = 0; start + window_frames <= series.values.size(); start += stride_frames) {
        PerclosReport r;
        size_t valid_count = 0;
        double sum_sq = 0.0;
        size_t n70 = 0, n80 = 0;
        for (size_t i = start; i < start + window_frames; ++i) {
            if (!series.valid.empty() && !series.valid[i]) continue;
            double v = series.values[i];
            ++valid_count;
            sum_sq += v * v;
            if (v >= 0.7) ++n70;
            if (v >= 0.8) ++n80;
        }
        r.invalid_fraction =
            1.0 - static_cast<double>(valid_count) / static_cast<double>(window_frames);
        r.reliable = r.invalid_fraction <= 0.5;
        if (valid_count > 0) {
            r.p70 = static_cast<double>(n70) / static_cast<double>(valid_count);
            r.p80 = static_cast<double>(n80) / static_cast<double>(valid_count);
            r.em = sum_sq / static_cast<double>(valid_count);
        }
        r.window_start_s = static_cast<double>(start) / series.fps;
        r.window_end_s = static_cast<double>(start + window_frames) / series.fps;
        reports.push_back(r);
    }
    return reports;
}

ClassLabel classify_scale(int scale_value) {
    if (scale_value < 1 || scale_value > 9) {
        throw Error(ErrorKind::InvalidScale, "scale value " + std::to_string(scale_value) +
                                                 " outside 1..9");
    }
    if (scale_value <= 3) return ClassLabel::Alert;
    if (scale_value <= 5) return ClassLabel::Unlabeled;
    if (scale_value <= 7) return ClassLabel::LowVigilance;
    return ClassLabel::Drowsy;
}

std::vector<double> centroid_deviation(const std::vector<Point2>& positions, bool global_mean) {
    if (positions.empty()) throw Error(ErrorKind::EmptyTrack, "no centroid positions");
    std::vector<double> deviations(positions.size());
    if (global_mean) {
        Point2 mean{};
        for (const auto& p : positions) {
            mean.x += p.x;
            mean.y += p.y;
        }
        mean.x /= static_cast<double>(positions.size());
        mean.y /= static_cast<double>(positions.size());
        for (size_t i = 0; i < positions.size(); ++i) {
            deviations[i] = std::hypot(positions[i].x - mean.x, positions[i].y - mean.y);
        }
        return deviations;
    }
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < positions.size(); ++i) {
        sx += positions[i].x;
        sy += positions[i].y;
        double n = static_cast<double>(i + 1);
        deviations[i] = std::hypot(positions[i].x - sx / n, positions[i].y - sy / n);
    }
    return deviations;
}

void write_perclos_csv(std::ostream& sink, const std::vector<PerclosReport>& reports) {
    sink << "window_start_s,window_end_s,p70,p80,em,invalid_fraction\n";
    for (const auto& r : reports) {
        sink << r.window_start_s << ',' << r.window_end_s << ',' << r.p70 << ',' << r.p80 << ','
             << r.em << ',' << r.invalid_fraction << '\n';
    }
}

}  // namespace drowsy

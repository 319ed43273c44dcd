#pragma once

#include <array>
#include <vector>

#include "drowsy/types.hpp"

namespace drowsy {

/// Eyelid-closure fractions over time. An empty `valid` mask means every
/// frame counts; invalid frames are excluded from window statistics.
struct ClosureSeries {
    std::vector<double> values;  // each in [0,1]
    std::vector<bool> valid;
    double fps = 30.0;
};

struct PerclosReport {
    double p70 = 0.0;  // fraction of frames with closure >= 0.7
    double p80 = 0.0;  // fraction of frames with closure >= 0.8
    double em = 0.0;   // mean squared closure
    double window_start_s = 0.0;
    double window_end_s = 0.0;
    double invalid_fraction = 0.0;
    bool reliable = true;  // false when more than half the window is invalid
};

/// Closure proxy: AU45 intensity normalized from [0,5] to [0,1].
inline double closure_from_au45(double intensity) { return intensity / 5.0; }

/// Closure from the binary AU45 presence channel instead of intensity.
inline double closure_from_au45_presence(double presence) { return presence != 0.0 ? 1.0 : 0.0; }

/// Sliding-window PERCLOS. Windows of window_s seconds advance by stride_s;
/// the series must cover at least one full window.
std::vector<PerclosReport> perclos(const ClosureSeries& series, double window_s = 60.0,
                                   double stride_s = 60.0);

/// 9-point scale to class: 1-3 Alert, 6-7 LowVigilance, 8-9 Drowsy,
/// 4-5 Unlabeled. Out of range throws InvalidScale.
ClassLabel classify_scale(int scale_value);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Distance of each position from the running mean of positions seen so far
/// (or from the global mean when global_mean is set).
std::vector<double> centroid_deviation(const std::vector<Point2>& positions,
                                       bool global_mean = false);

/// CSV export: window_start_s,window_end_s,p70,p80,em,invalid_fraction
void write_perclos_csv(std::ostream& sink, const std::vector<PerclosReport>& reports);

}  // namespace drowsy

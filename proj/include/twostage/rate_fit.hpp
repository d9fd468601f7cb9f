#pragma once

#include <span>

#include "twostage/schedule.hpp"

namespace twostage {

struct FitWindow {
    int t_min = 0;
    int t_max = 0;
};

// Rates are in bits per time unit: a clean series decays as 2^(-rate * t).
struct RateEstimate {
    double rate = 0.0;
    FitWindow window;
    double residual = 0.0;  // rms of the log2 fit
    bool oscillating = false;
    int points_used = 0;
};

// Least-squares slope of log2|series(t)| over the window, negated.
// Throws when fewer than 3 nonzero points remain or the series is constant.
RateEstimate fit_rate(std::span<const double> series, FitWindow window);

// Default two-stage windows: [2, t_sat - 2] and [t_sat + 2, T] with
// t_sat = L/4 for periodic brickwall, L/2 otherwise.
struct TwoStageWindows {
    int t_sat;
    FitWindow first;
    FitWindow second;
};

TwoStageWindows default_windows(const Schedule& schedule, int T);

}  // namespace twostage

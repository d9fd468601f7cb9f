#include "twostage/rate_fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace twostage {

RateEstimate fit_rate(std::span<const double> series, FitWindow window) {
    if (window.t_min < 0 || window.t_max >= int(series.size()) ||
        window.t_min > window.t_max)
        throw std::invalid_argument("fit window out of range");

    std::vector<double> ts, logs;
    bool oscillating = false;
    double prev_sign = 0.0;
    for (int t = window.t_min; t <= window.t_max; ++t) {
        double y = series[t];
        if (std::abs(y) < 1e-300) continue;
        double sign = y > 0 ? 1.0 : -1.0;
        if (prev_sign != 0.0 && sign != prev_sign) oscillating = true;
        prev_sign = sign;
        ts.push_back(double(t));
        logs.push_back(std::log2(std::abs(y)));
    }
    if (ts.size() < 3)
        throw std::invalid_argument("fit window has fewer than 3 usable points");

    bool constant = true;
    for (std::size_t i = 1; i < logs.size(); ++i)
        if (logs[i] != logs[0]) constant = false;
    if (constant) throw std::invalid_argument("degenerate constant series");

    double n = double(ts.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += logs[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * logs[i];
    }
    double denom = n * stt - st * st;
    double slope = (n * sty - st * sy) / denom;
    double intercept = (sy - slope * st) / n;

    double ss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double r = logs[i] - (slope * ts[i] + intercept);
        ss += r * r;
    }

    RateEstimate est;
    est.rate = -slope;
    est.window = window;
    est.residual = std::sqrt(ss / n);
    est.oscillating = oscillating;
    est.points_used = int(ts.size());
    return est;
}

TwoStageWindows default_windows(const Schedule& schedule, int T) {
    int t_sat;
    if (schedule.geometry == Geometry::Brickwall && schedule.boundary == Boundary::Periodic)
        t_sat = schedule.L / 4;
    else
        t_sat = schedule.L / 2;
    TwoStageWindows w;
    w.t_sat = t_sat;
    w.first = {2, t_sat - 2};
    w.second = {t_sat + 2, T};
    return w;
}

}  // namespace twostage

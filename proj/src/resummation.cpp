#include "twostage/resummation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twostage {

ReducedSeries reduce_space(const SpaceTimeTable& table, Reduction method) {
    if (table.z.empty()) throw std::invalid_argument("empty table");
    ReducedSeries out;
    out.method = method;
    out.source = std::string(pinning_name(table.pinning)) + " " + table.family + " " +
                 table.geometry + " " + table.boundary + " L=" + std::to_string(table.L);
    out.z.resize(table.T + 1);
    for (int t = 0; t <= table.T; ++t) {
        double acc = (method == Reduction::SumX || method == Reduction::AbsSumX)
                         ? 0.0
                         : -HUGE_VAL;
        for (int x = 1; x <= table.L; ++x) {
            double v = table.at(x, t);
            switch (method) {
                case Reduction::SumX: acc += v; break;
                case Reduction::AbsSumX: acc += std::abs(v); break;
                case Reduction::MaxX: acc = std::max(acc, v); break;
                case Reduction::AbsMaxX: acc = std::max(acc, std::abs(v)); break;
            }
        }
        out.z[t] = acc;
    }
    return out;
}

const char* reduction_name(Reduction r) {
    switch (r) {
        case Reduction::SumX: return "sum_x";
        case Reduction::MaxX: return "max_x";
        case Reduction::AbsSumX: return "abs_sum_x";
        case Reduction::AbsMaxX: return "abs_max_x";
    }
    return "?";
}

IrreducibleWeights solve_irreducible(const ReducedSeries& series) {
    const std::size_t n = series.z.size();
    if (n < 3) throw std::invalid_argument("need T >= 2 for the W/Z recursion");
    double z0 = series.z[0];
    if (!std::isfinite(z0) || z0 == 0.0)
        throw std::invalid_argument("Z(0) must be finite and nonzero");

    std::vector<double> z(series.z);
    for (double& v : z) v /= z0;

    IrreducibleWeights out;
    out.w.assign(n, 0.0);
    for (std::size_t t = 1; t < n; ++t) {
        double acc = z[t];
        for (std::size_t tp = 1; tp < t; ++tp) acc -= z[tp] * out.w[t - tp];
        out.w[t] = acc;
    }
    return out;
}

std::vector<double> reconstruct_from_irreducible(const IrreducibleWeights& weights,
                                                 double z0) {
    const std::size_t n = weights.w.size();
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    for (std::size_t t = 1; t < n; ++t) {
        double acc = weights.w[t];
        for (std::size_t tp = 1; tp < t; ++tp) acc += z[tp] * weights.w[t - tp];
        z[t] = acc;
    }
    for (double& v : z) v *= z0;
    return z;
}

namespace {

// 1 - sum_{t=1..order} W(t) x^t, Horner from the top.
double gen_poly(const std::vector<double>& w, int order, double x) {
    double acc = 0.0;
    for (int t = order; t >= 1; --t) acc = acc * x + w[t];
    return 1.0 - acc * x;
}

// Minimal positive root via grid scan for the first sign change + bisection.
RootTracePoint root_at_order(const std::vector<double>& w, int order,
                             const RootOptions& opts) {
    RootTracePoint pt{order, 0.0, 0.0, false};
    double lo = opts.x_min;
    double hi = opts.x_max;
    while (hi <= opts.x_hard_cap) {
        double f_lo = gen_poly(w, order, lo);
        double prev_x = lo, prev_f = f_lo;
        bool bracketed = false;
        for (int i = 1; i <= opts.scan_points; ++i) {
            double x = lo * std::pow(hi / lo, double(i) / opts.scan_points);
            double f = gen_poly(w, order, x);
            if ((prev_f <= 0.0) != (f <= 0.0)) {
                // bisect inside [prev_x, x]
                double a = prev_x, b = x, fa = prev_f;
                for (int it = 0; it < 200; ++it) {
                    double m = 0.5 * (a + b);
                    double fm = gen_poly(w, order, m);
                    if (std::abs(fm) < opts.tol || (b - a) < opts.tol * m) {
                        a = b = m;
                        break;
                    }
                    if ((fa <= 0.0) != (fm <= 0.0))
                        b = m;
                    else
                        a = m, fa = fm;
                }
                pt.x0 = 0.5 * (a + b);
                pt.rate = std::log2(pt.x0);
                pt.found = true;
                bracketed = true;
                break;
            }
            prev_x = x;
            prev_f = f;
        }
        if (bracketed) break;
        lo = hi;  // expand geometrically
        hi *= opts.x_max;
        if (lo >= opts.x_hard_cap) break;
    }
    return pt;
}

}  // namespace

MagnonRateResult resummed_magnon_rate(const GateFamily& family, int T, Reduction method) {
    int L = T + 2 + (T % 2);  // even, with the light cone clear of the far edge
    if (L < 4) L = 4;
    Schedule sched = build_schedule(Geometry::Brickwall, Boundary::Open, L);
    SpaceTimeTable table = pinned_table(Pinning::Magnon, sched, family, T);

    MagnonRateResult res;
    res.method = method;
    ReducedSeries plain = reduce_space(table, Reduction::SumX);
    for (std::size_t t = 1; t < plain.z.size(); ++t)
        if ((plain.z[t] > 0) != (plain.z[t - 1] > 0)) res.series_oscillates = true;

    ReducedSeries series = reduce_space(table, method);
    IrreducibleWeights w = solve_irreducible(series);
    res.root = generating_root(w);
    return res;
}

RootResult generating_root(const IrreducibleWeights& weights, RootOptions opts) {
    const int T = int(weights.w.size()) - 1;
    if (T < 1) throw std::invalid_argument("no irreducible weights");

    RootResult res;
    for (int order = std::min(2, T); order <= T; ++order)
        res.trace.push_back(root_at_order(weights.w, order, opts));

    const RootTracePoint& last = res.trace.back();
    res.found = last.found;
    if (last.found) {
        res.x0 = last.x0;
        res.rate = last.rate;
        res.residual = std::abs(gen_poly(weights.w, T, last.x0));
    }
    return res;
}

}  // namespace twostage

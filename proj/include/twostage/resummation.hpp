#pragma once

#include <string>
#include <vector>

#include "twostage/propagator.hpp"

namespace twostage {

enum class Reduction { SumX, MaxX, AbsSumX, AbsMaxX };

struct ReducedSeries {
    std::vector<double> z;  // z[t], t = 0..T
    Reduction method = Reduction::SumX;
    std::string source;  // metadata of the table it came from
};

ReducedSeries reduce_space(const SpaceTimeTable& table, Reduction method = Reduction::SumX);

const char* reduction_name(Reduction r);

// Irreducible weights of Z(t) = W(t) + sum_{0<t'<t} Z(t') W(t-t'),
// solved by forward substitution after normalizing Z(0) to 1.
struct IrreducibleWeights {
    std::vector<double> w;  // w[t], t = 1..T; w[0] unused and zero
};

IrreducibleWeights solve_irreducible(const ReducedSeries& series);

// Reconstruct Z from W through the same recursion (round-trip check).
std::vector<double> reconstruct_from_irreducible(const IrreducibleWeights& weights,
                                                 double z0 = 1.0);

struct RootTracePoint {
    int order;    // truncation order tau
    double x0;    // minimal positive root of 1 - sum_{t<=tau} W(t) x^t
    double rate;  // log2(x0)
    bool found;
};

struct RootResult {
    double x0 = 0.0;
    double rate = 0.0;
    bool found = false;
    double residual = 0.0;  // |1 - sum W x0^t| at the root
    std::vector<RootTracePoint> trace;
};

struct RootOptions {
    double x_min = 1.0 + 1e-9;
    double x_max = 64.0;
    double x_hard_cap = 1 << 30;  // stop expanding the bracket here
    int scan_points = 4096;
    double tol = 1e-12;
};

RootResult generating_root(const IrreducibleWeights& weights, RootOptions opts = {});

// Full pipeline: magnon table -> spatial reduction -> W/Z -> root.
// The chain is sized so a magnon launched at site 1 never feels the far
// edge within the window: reflections would corrupt Z(t) at t >= L - 1.
// The root is searched on the abs-reduced series: the plain sum loses its
// positive root where the two ballistic branches oscillate in sign, and
// its cancellations slow the truncation convergence near the swap point.
struct MagnonRateResult {
    RootResult root;
    Reduction method = Reduction::AbsSumX;
    bool series_oscillates = false;  // sign changes in the plain sum
};

MagnonRateResult resummed_magnon_rate(const GateFamily& family, int T,
                                      Reduction method = Reduction::AbsSumX);

}  // namespace twostage

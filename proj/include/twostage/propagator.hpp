#pragma once

#include <string>
#include <vector>

#include "twostage/kernels.hpp"
#include "twostage/magnet.hpp"
#include "twostage/schedule.hpp"

namespace twostage {

inline constexpr int kMaxDenseL = 24;  // 2^24 coordinates; no MPS here

// Coordinate vector Z_s(t) over the 2^L spin configurations. The all-plus
// and all-minus coordinates are drained into absorbed_* after every time
// step; the free-boundary series is fitted on what remains.
struct PurityVector {
    int L = 0;
    std::vector<double> coeffs;
    int time_steps = 0;
    double absorbed_plus = 0.0;
    double absorbed_minus = 0.0;
};

PurityVector make_indicator_state(const SpinConfig& config);

void drain_absorbers(PurityVector& state);

// Applies all gates of one time unit of the schedule, then drains.
void apply_time_step(PurityVector& state, const Schedule& schedule, int step,
                     const LocalTransfer& gate, kernels::Exec exec = kernels::Exec::Parallel);

struct DecaySeries {
    std::vector<double> values;  // values[t], t = 0..T (shorter when truncated)
    bool truncated = false;      // remaining mass fell below 1e-300
    double prefactor = 1.0;      // (q^2+q)^-L, already applied
};

// Free-boundary partition function from a domain-wall indicator at x0:
// the all-ones contraction of the unabsorbed remainder after each step.
DecaySeries partition_free_boundary(int x0, const Schedule& schedule,
                                    const GateFamily& family, int T,
                                    kernels::Exec exec = kernels::Exec::Parallel);

// Haar-only fast path tracking the L+1 domain-wall coordinates.
struct DWSeries {
    std::vector<std::vector<double>> walls;  // walls[t][x], x = 0..L (0 after drain)
    DecaySeries delta_z;
};

DWSeries dw_sector_evolve(int x0, const Schedule& schedule, const GateFamily& family,
                          int T);

enum class Pinning { Magnon, DomainWall, ModifiedMagnon };

struct SpaceTimeTable {
    int L = 0;
    int T = 0;
    Pinning pinning = Pinning::Magnon;
    std::string family;
    std::string geometry;
    std::string boundary;
    std::vector<double> z;  // (T+1) x L, z[t*L + (x-1)]

    double at(int x, int t) const { return z[std::size_t(t) * L + (x - 1)]; }
    double& at(int x, int t) { return z[std::size_t(t) * L + (x - 1)]; }
};

// Magnon: evolve |-++...+>, read the coordinate of the single-minus-at-x
// configuration (the dual-basis overlap reduces to this readout).
// DomainWall: evolve a wall from the chain center, read wall-at-x coordinates.
// ModifiedMagnon: contract with the plain <+..+ -_x +..+| bra; per-site
// overlaps are 1 on a match and 1/q on a mismatch.
SpaceTimeTable pinned_table(Pinning pinning, const Schedule& schedule,
                            const GateFamily& family, int T,
                            kernels::Exec exec = kernels::Exec::Parallel);

const char* pinning_name(Pinning p);

}  // namespace twostage

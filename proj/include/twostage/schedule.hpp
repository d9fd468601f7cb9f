#pragma once

#include <vector>

namespace twostage {

enum class Geometry { Brickwall, Staircase };
enum class Boundary { Open, Periodic };

struct GatePos {
    int a, b;  // 1-based sites; the 4x4 update reads (s_a, s_b)
    bool operator==(const GatePos&) const = default;
};

// Gate layout plus the time accounting used for all rate fits:
// one brickwall layer is one time unit, and one staircase sweep spans two
// time units. The sweep accounting is calibrated against the exact
// domain-wall walk: a wall loses log2(3/2) bits per sweep, which matches
// the known staircase rate of half that per unit. Brickwall layers
// alternate starting with the (1,2),(3,4),... pattern; a staircase sweep
// runs (1,2),(2,3),...,(L-1,L) and periodic boundaries append (L,1).
struct Schedule {
    Geometry geometry = Geometry::Brickwall;
    Boundary boundary = Boundary::Open;
    int L = 0;
    bool flagged_unconventional = false;  // staircase + periodic

    // Gates making up time unit `step` (0-based).
    std::vector<GatePos> time_step(int step) const;

    std::vector<GatePos> brickwall_layer(bool even_pattern) const;
    std::vector<GatePos> sweep() const;  // one staircase sweep
    int gates_per_sweep() const;

    const char* geometry_name() const;
    const char* boundary_name() const;
};

Schedule build_schedule(Geometry g, Boundary bc, int L);

}  // namespace twostage

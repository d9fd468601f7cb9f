#include "twostage/schedule.hpp"

#include <stdexcept>

namespace twostage {

std::vector<GatePos> Schedule::brickwall_layer(bool even_pattern) const {
    std::vector<GatePos> gates;
    if (even_pattern) {
        for (int i = 1; i + 1 <= L; i += 2) gates.push_back({i, i + 1});
    } else {
        for (int i = 2; i + 1 <= L; i += 2) gates.push_back({i, i + 1});
        if (boundary == Boundary::Periodic) gates.push_back({L, 1});
    }
    return gates;
}

std::vector<GatePos> Schedule::sweep() const {
    std::vector<GatePos> gates;
    for (int i = 1; i + 1 <= L; ++i) gates.push_back({i, i + 1});
    if (boundary == Boundary::Periodic) gates.push_back({L, 1});
    return gates;
}

int Schedule::gates_per_sweep() const {
    return boundary == Boundary::Periodic ? L : L - 1;
}

std::vector<GatePos> Schedule::time_step(int step) const {
    if (step < 0) throw std::out_of_range("negative time step");
    if (geometry == Geometry::Brickwall) return brickwall_layer(step % 2 == 0);
    // Staircase: half a sweep per time unit.
    std::vector<GatePos> s = sweep();
    int n = gates_per_sweep();
    int h1 = n / 2;
    std::vector<GatePos> gates;
    if (step % 2 == 0)
        for (int g = 0; g < h1; ++g) gates.push_back(s[g]);
    else
        for (int g = h1; g < n; ++g) gates.push_back(s[g]);
    return gates;
}

const char* Schedule::geometry_name() const {
    return geometry == Geometry::Brickwall ? "brickwall" : "staircase";
}

const char* Schedule::boundary_name() const {
    return boundary == Boundary::Open ? "open" : "periodic";
}

Schedule build_schedule(Geometry g, Boundary bc, int L) {
    if (L < 4) throw std::invalid_argument("L must be at least 4");
    if (L % 2 != 0) throw std::invalid_argument("L must be even");
    Schedule s;
    s.geometry = g;
    s.boundary = bc;
    s.L = L;
    s.flagged_unconventional = (g == Geometry::Staircase && bc == Boundary::Periodic);
    return s;
}

}  // namespace twostage

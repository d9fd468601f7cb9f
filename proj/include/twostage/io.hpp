#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "twostage/magnet.hpp"
#include "twostage/propagator.hpp"
#include "twostage/rate_fit.hpp"
#include "twostage/resummation.hpp"

namespace twostage::io {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kTimeConvention =
    "brickwall layer = 1 time unit; staircase sweep = 2 time units; "
    "rates in bits per time unit, decay 2^(-rate*t)";

using json = nlohmann::json;

// Everything a run needs; round-trips losslessly through JSON.
struct RunConfig {
    std::string subcommand;
    std::string family = "haar";  // haar | xyz | floquet
    int q = 2;
    double ax = 1.0, ay = 1.0, az = 0.5, phi = 0.6;
    std::string geometry = "brickwall";
    std::string boundary = "open";
    int L = 12;
    int T = 40;
    int x0 = -1;  // -1: L/2
    std::optional<FitWindow> first_window;
    std::optional<FitWindow> second_window;
    std::string reduction = "abs_sum_x";
    std::string mode = "magnon";
    int pauli_a = 3, pauli_b = 3;
    int n_states = 32;
    std::uint64_t seed = 0x5eed5eedULL;
    std::string out = "run";
    bool gnuplot = false;

    GateFamily gate_family() const;
    Geometry parsed_geometry() const;
    Boundary parsed_boundary() const;
    Reduction parsed_reduction() const;
};

json to_json(const RunConfig& c);
RunConfig run_config_from_json(const json& j);

std::string format_double(double v);  // shortest exact round-trip form

// CSV files carry "# key: value" metadata lines (version, config, time
// convention), one header row, then RFC-4180 CRLF records. Writes go to a
// temporary file first and are renamed into place.
void write_text_atomic(const std::string& path, const std::string& content);

std::string series_csv(const RunConfig& config, const std::vector<double>& values,
                       const char* value_column);
std::string table_csv(const RunConfig& config, const SpaceTimeTable& table);
std::string trace_csv(const RunConfig& config, const std::vector<RootTracePoint>& trace);

json rate_json(const RateEstimate& est);

}  // namespace twostage::io

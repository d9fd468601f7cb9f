#include "twostage/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace twostage::io {

GateFamily RunConfig::gate_family() const {
    if (family == "haar") return GateFamily::haar(q);
    if (family == "xyz") return GateFamily::xyz(ax, ay, az);
    if (family == "floquet") return GateFamily::floquet(ax, ay, az, phi);
    throw std::invalid_argument("unknown family: " + family);
}

Geometry RunConfig::parsed_geometry() const {
    if (geometry == "brickwall") return Geometry::Brickwall;
    if (geometry == "staircase") return Geometry::Staircase;
    throw std::invalid_argument("unknown geometry: " + geometry);
}

Boundary RunConfig::parsed_boundary() const {
    if (boundary == "open") return Boundary::Open;
    if (boundary == "periodic") return Boundary::Periodic;
    throw std::invalid_argument("unknown boundary: " + boundary);
}

Reduction RunConfig::parsed_reduction() const {
    if (reduction == "sum_x") return Reduction::SumX;
    if (reduction == "max_x") return Reduction::MaxX;
    if (reduction == "abs_sum_x") return Reduction::AbsSumX;
    if (reduction == "abs_max_x") return Reduction::AbsMaxX;
    throw std::invalid_argument("unknown reduction: " + reduction);
}

json to_json(const RunConfig& c) {
    json j{{"subcommand", c.subcommand}, {"family", c.family},   {"q", c.q},
           {"ax", c.ax},                 {"ay", c.ay},           {"az", c.az},
           {"phi", c.phi},               {"geometry", c.geometry},
           {"boundary", c.boundary},     {"L", c.L},             {"T", c.T},
           {"x0", c.x0},                 {"reduction", c.reduction},
           {"mode", c.mode},             {"pauli_a", c.pauli_a}, {"pauli_b", c.pauli_b},
           {"n_states", c.n_states},     {"seed", c.seed},       {"out", c.out},
           {"gnuplot", c.gnuplot}};
    if (c.first_window)
        j["first_window"] = {c.first_window->t_min, c.first_window->t_max};
    if (c.second_window)
        j["second_window"] = {c.second_window->t_min, c.second_window->t_max};
    return j;
}

RunConfig run_config_from_json(const json& j) {
    RunConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.family = j.at("family").get<std::string>();
    c.q = j.at("q").get<int>();
    c.ax = j.at("ax").get<double>();
    c.ay = j.at("ay").get<double>();
    c.az = j.at("az").get<double>();
    c.phi = j.at("phi").get<double>();
    c.geometry = j.at("geometry").get<std::string>();
    c.boundary = j.at("boundary").get<std::string>();
    c.L = j.at("L").get<int>();
    c.T = j.at("T").get<int>();
    c.x0 = j.at("x0").get<int>();
    c.reduction = j.at("reduction").get<std::string>();
    c.mode = j.at("mode").get<std::string>();
    c.pauli_a = j.at("pauli_a").get<int>();
    c.pauli_b = j.at("pauli_b").get<int>();
    c.n_states = j.at("n_states").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.out = j.at("out").get<std::string>();
    c.gnuplot = j.at("gnuplot").get<bool>();
    if (j.contains("first_window"))
        c.first_window = FitWindow{j["first_window"][0], j["first_window"][1]};
    if (j.contains("second_window"))
        c.second_window = FitWindow{j["second_window"][0], j["second_window"][1]};
    return c;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + tmp);
        f << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename into " + path);
}

namespace {

std::string metadata_block(const RunConfig& config) {
    std::string s;
    s += "# version: " + std::string(kVersion) + "\r\n";
    s += "# config: " + to_json(config).dump() + "\r\n";
    s += "# time_convention: " + std::string(kTimeConvention) + "\r\n";
    return s;
}

}  // namespace

std::string series_csv(const RunConfig& config, const std::vector<double>& values,
                       const char* value_column) {
    std::string s = metadata_block(config);
    s += "t,";
    s += value_column;
    s += "\r\n";
    for (std::size_t t = 0; t < values.size(); ++t)
        s += std::to_string(t) + "," + format_double(values[t]) + "\r\n";
    return s;
}

std::string table_csv(const RunConfig& config, const SpaceTimeTable& table) {
    std::string s = metadata_block(config);
    s += "# pinning: " + std::string(pinning_name(table.pinning)) + "\r\n";
    s += "x,t,Z\r\n";
    for (int t = 0; t <= table.T; ++t)
        for (int x = 1; x <= table.L; ++x)
            s += std::to_string(x) + "," + std::to_string(t) + "," +
                 format_double(table.at(x, t)) + "\r\n";
    return s;
}

std::string trace_csv(const RunConfig& config, const std::vector<RootTracePoint>& trace) {
    std::string s = metadata_block(config);
    s += "tau,x0,rate\r\n";
    for (const RootTracePoint& p : trace) {
        if (!p.found) continue;
        s += std::to_string(p.order) + "," + format_double(p.x0) + "," +
             format_double(p.rate) + "\r\n";
    }
    return s;
}

json rate_json(const RateEstimate& est) {
    return json{{"rate", est.rate},
                {"window", {est.window.t_min, est.window.t_max}},
                {"residual", est.residual},
                {"oscillating", est.oscillating},
                {"points_used", est.points_used}};
}

}  // namespace twostage::io

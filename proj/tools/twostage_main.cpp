#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "twostage/exact_circuit.hpp"
#include "twostage/io.hpp"
#include "twostage/propagator.hpp"
#include "twostage/rate_fit.hpp"
#include "twostage/resummation.hpp"
#include "twostage/theory.hpp"

using namespace twostage;
using io::json;
using io::RunConfig;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_json(const std::string& path, const json& j) {
    io::write_text_atomic(path, j.dump(2) + "\n");
    std::cout << path << "\n";
}

void write_csv(const std::string& path, const std::string& content) {
    io::write_text_atomic(path, content);
    std::cout << path << "\n";
}

void maybe_gnuplot(const RunConfig& c, const std::string& csv, const std::string& ycol) {
    if (!c.gnuplot) return;
    std::string gp;
    gp += "set datafile separator ','\n";
    gp += "set datafile commentschars '#'\n";
    gp += "set logscale y\n";
    gp += "set xlabel 't'\n";
    gp += "set ylabel '" + ycol + "'\n";
    gp += "plot '" + csv + "' skip 4 using 1:(abs($2)) with linespoints title '" +
          ycol + "'\n";
    io::write_text_atomic(c.out + ".gp", gp);
}

int cmd_simulate(RunConfig c) {
    Schedule sched = build_schedule(c.parsed_geometry(), c.parsed_boundary(), c.L);
    if (sched.flagged_unconventional)
        std::cerr << "note: staircase with periodic boundaries has no reference "
                     "rate table\n";
    GateFamily fam = c.gate_family();
    int x0 = c.x0 < 0 ? c.L / 2 : c.x0;

    DecaySeries series;
    if (fam.kind == FamilyKind::Haar && sched.boundary == Boundary::Open)
        series = dw_sector_evolve(x0, sched, fam, c.T).delta_z;
    else
        series = partition_free_boundary(x0, sched, fam, c.T);
    if (series.truncated)
        std::cerr << "note: series truncated at t = " << series.values.size() - 1
                  << " (remaining weight below 1e-300)\n";

    TwoStageWindows defaults = default_windows(sched, int(series.values.size()) - 1);
    FitWindow w1 = c.first_window.value_or(defaults.first);
    FitWindow w2 = c.second_window.value_or(defaults.second);

    json rates{{"version", io::kVersion},
               {"config", io::to_json(c)},
               {"time_convention", io::kTimeConvention},
               {"t_sat", defaults.t_sat},
               {"prefactor", series.prefactor},
               {"truncated", series.truncated}};
    rates["first_stage"] = io::rate_json(fit_rate(series.values, w1));
    rates["second_stage"] = io::rate_json(fit_rate(series.values, w2));

    std::string csv = io::series_csv(c, series.values, "deltaZ");
    write_csv(c.out + "_series.csv", csv);
    write_json(c.out + "_rates.json", rates);
    maybe_gnuplot(c, c.out + "_series.csv", "deltaZ");
    return 0;
}

int cmd_sweep_az(RunConfig c, const std::vector<double>& grid) {
    std::string s;
    s += "# version: " + std::string(io::kVersion) + "\r\n";
    s += "# config: " + io::to_json(c).dump() + "\r\n";
    s += "# time_convention: " + std::string(io::kTimeConvention) + "\r\n";
    s += "az,boundary,r_measured,r_analytic,oscillating\r\n";
    for (double az : grid) {
        MagnonRateResult m =
            resummed_magnon_rate(GateFamily::xyz(1, 1, az), c.T, c.parsed_reduction());
        if (!m.root.found) throw std::runtime_error("no generating-function root");
        double rmag = theory::r_mag_analytic(az);
        for (const char* bc : {"open", "periodic"}) {
            double r1 = bc == std::string("open") ? 1.0 : 2.0;
            double analytic = std::min(r1, rmag);
            s += io::format_double(az) + "," + bc + "," +
                 io::format_double(m.root.rate) + "," + io::format_double(analytic) +
                 "," + (m.series_oscillates ? "1" : "0") + "\r\n";
        }
    }
    write_csv(c.out + "_sweep.csv", s);
    return 0;
}

int cmd_predict(RunConfig c) {
    theory::RatePrediction p =
        theory::predict_rates(c.gate_family(), c.parsed_geometry(), c.parsed_boundary());
    json j{{"version", io::kVersion},
           {"config", io::to_json(c)},
           {"time_convention", io::kTimeConvention},
           {"closed_form", p.has_closed_form}};
    if (p.has_closed_form) {
        j["r1"] = p.r1;
        j["r2"] = p.r2;
        j["scenario"] = theory::scenario_name(p.scenario);
        j["formulas_used"] = p.formulas_used;
    }
    if (!p.notes.empty()) j["notes"] = p.notes;
    std::cout << j.dump(2) << "\n";
    write_json(c.out + "_predict.json", j);
    return 0;
}

int cmd_channel(RunConfig c) {
    theory::AveragedChannel ch = theory::averaged_channel(c.az);
    json j{{"version", io::kVersion},
           {"config", io::to_json(c)},
           {"matrix", {{ch.m[0][0], ch.m[0][1]}, {ch.m[1][0], ch.m[1][1]}}},
           {"lambda_plus", 1.0},
           {"lambda_minus", ch.lambda_minus},
           {"r_mag", theory::r_mag_analytic(c.az)}};
    std::cout << j.dump(2) << "\n";
    write_json(c.out + "_channel.json", j);
    return 0;
}

int cmd_resum(RunConfig c) {
    MagnonRateResult m =
        resummed_magnon_rate(c.gate_family(), c.T, c.parsed_reduction());
    json j{{"version", io::kVersion},
           {"config", io::to_json(c)},
           {"method", reduction_name(m.method)},
           {"oscillating", m.series_oscillates},
           {"found", m.root.found}};
    if (m.root.found) {
        j["rate"] = m.root.rate;
        j["x0"] = m.root.x0;
        j["residual"] = m.root.residual;
    }
    write_csv(c.out + "_trace.csv", io::trace_csv(c, m.root.trace));
    write_json(c.out + "_resum.json", j);
    return 0;
}

int cmd_exact(RunConfig c) {
    if (c.mode == "magnon") {
        GateFamily fam = GateFamily::floquet(c.ax, c.ay, c.az, c.phi);
        int T = std::min(c.T, c.L);  // reflections corrupt later times
        SpaceTimeTable tab = exact::magnon_overlap_table(fam, c.L, T);
        ReducedSeries z = reduce_space(tab, c.parsed_reduction());
        IrreducibleWeights w = solve_irreducible(z);
        RootResult root = generating_root(w);
        exact::DoubledChannelReport rep = exact::doubled_channel(
            exact::light_cone_channel(exact::floquet_gate(fam), exact::Side::Right));
        json j{{"version", io::kVersion},
               {"config", io::to_json(c)},
               {"method", reduction_name(z.method)},
               {"found", root.found},
               {"r_mag_channel", rep.r_mag},
               {"channel_selected_modulus", rep.selected_modulus}};
        if (root.found) j["r_mag_resummed"] = root.rate;
        write_csv(c.out + "_zmag.csv", io::table_csv(c, tab));
        write_csv(c.out + "_trace.csv", io::trace_csv(c, root.trace));
        write_json(c.out + "_exact.json", j);
        return 0;
    }
    if (c.mode == "channel") {
        exact::Mat4 u = exact::floquet_gate(c.ax, c.ay, c.az, c.phi);
        exact::PauliChannel ch = exact::light_cone_channel(u, exact::Side::Right);
        exact::DoubledChannelReport rep = exact::doubled_channel(ch);
        json ptm = json::array();
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int k = 0; k < 4; ++k) row.push_back(ch.ptm(i, k));
            ptm.push_back(row);
        }
        json eigs = json::array();
        for (const auto& e : rep.eigenvalues) eigs.push_back({e.real(), e.imag()});
        json j{{"version", io::kVersion},
               {"config", io::to_json(c)},
               {"ptm", ptm},
               {"dual_unitary", ch.exact},
               {"du_residual", ch.du_residual},
               {"doubled_eigenvalues", eigs},
               {"selected_lambda", rep.selected_modulus},
               {"r_mag_fixed", rep.r_mag}};
        std::cout << j.dump(2) << "\n";
        write_json(c.out + "_channel.json", j);
        return 0;
    }
    if (c.mode == "correlator") {
        exact::Mat4 u = exact::floquet_gate(c.ax, c.ay, c.az, c.phi);
        std::vector<double> vals;
        for (int t = 0; t <= c.T; ++t)
            vals.push_back(exact::two_point_correlator(c.pauli_a, c.pauli_b, t, t, u));
        write_csv(c.out + "_correlator.csv", io::series_csv(c, vals, "C"));
        return 0;
    }
    if (c.mode == "reverse") {
        exact::ReverseTransitionResult r = exact::reverse_transition_correlator(
            c.az, c.phi, c.L, c.T, c.n_states, c.seed);
        json j{{"version", io::kVersion},
               {"config", io::to_json(c)},
               {"fit", io::rate_json(r.fit)},
               {"n_states", r.n_states},
               {"seed", r.seed}};
        write_csv(c.out + "_reverse.csv", io::series_csv(c, r.c2, "C2"));
        write_json(c.out + "_reverse.json", j);
        maybe_gnuplot(c, c.out + "_reverse.csv", "C2");
        return 0;
    }
    throw ConfigError("unknown exact mode: " + c.mode);
}

std::vector<double> parse_grid(const std::string& spec) {
    // "a:b:step" or comma-separated values
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b, step;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0)
            throw ConfigError("bad grid spec: " + spec);
        for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
    } else {
        std::size_t pos = 0;
        while (pos < spec.size()) {
            std::size_t comma = spec.find(',', pos);
            out.push_back(std::stod(spec.substr(pos, comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (out.empty()) throw ConfigError("empty grid");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-stage purity decay toolkit"};
    app.require_subcommand(1);

    RunConfig c;
    std::string grid_spec = "0.1:0.9:0.1";

    auto add_family = [&](CLI::App* s) {
        s->add_option("--family", c.family, "haar | xyz | floquet");
        s->add_option("--q", c.q, "local dimension (haar)");
        s->add_option("--ax", c.ax);
        s->add_option("--ay", c.ay);
        s->add_option("--az", c.az);
        s->add_option("--phi", c.phi, "floquet rotation angle");
    };
    auto add_lattice = [&](CLI::App* s) {
        s->add_option("--geometry", c.geometry, "brickwall | staircase");
        s->add_option("--bc", c.boundary, "open | periodic");
        s->add_option("--L", c.L);
        s->add_option("--T", c.T);
    };
    auto add_out = [&](CLI::App* s) {
        s->add_option("--out", c.out, "output path prefix");
        s->add_flag("--gnuplot", c.gnuplot, "also emit a plot script");
    };

    CLI::App* sim = app.add_subcommand("simulate", "evolve and fit a decay series");
    add_family(sim);
    add_lattice(sim);
    add_out(sim);
    sim->add_option("--x0", c.x0, "initial wall position (default L/2)");
    int w1lo = -1, w1hi = -1, w2lo = -1, w2hi = -1;
    sim->add_option("--w1lo", w1lo);
    sim->add_option("--w1hi", w1hi);
    sim->add_option("--w2lo", w2lo);
    sim->add_option("--w2hi", w2hi);

    CLI::App* sweep = app.add_subcommand("sweep-az", "resummed magnon rates on a grid");
    sweep->add_option("--grid", grid_spec, "a:b:step or comma list");
    sweep->add_option("--T", c.T);
    sweep->add_option("--method", c.reduction);
    add_out(sweep);

    CLI::App* pred = app.add_subcommand("predict", "closed-form rate predictions");
    add_family(pred);
    pred->add_option("--geometry", c.geometry);
    pred->add_option("--bc", c.boundary);
    add_out(pred);

    CLI::App* chan = app.add_subcommand("channel", "averaged light-cone channel");
    chan->add_option("--az", c.az)->required();
    add_out(chan);

    CLI::App* resum = app.add_subcommand("resum", "W/Z resummation of the magnon");
    add_family(resum);
    resum->add_option("--T", c.T);
    resum->add_option("--method", c.reduction);
    add_out(resum);

    CLI::App* exact_cmd = app.add_subcommand("exact", "fixed Floquet circuits");
    add_family(exact_cmd);
    exact_cmd->add_option("--L", c.L);
    exact_cmd->add_option("--T", c.T);
    exact_cmd->add_option("--mode", c.mode, "magnon | channel | correlator | reverse");
    exact_cmd->add_option("--pa", c.pauli_a, "pauli label 0..3");
    exact_cmd->add_option("--pb", c.pauli_b, "pauli label 0..3");
    exact_cmd->add_option("--n-states", c.n_states);
    exact_cmd->add_option("--seed", c.seed);
    add_out(exact_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            c.subcommand = "simulate";
            if (w1lo >= 0 && w1hi >= w1lo) c.first_window = FitWindow{w1lo, w1hi};
            if (w2lo >= 0 && w2hi >= w2lo) c.second_window = FitWindow{w2lo, w2hi};
            return cmd_simulate(c);
        }
        if (sweep->parsed()) {
            c.subcommand = "sweep-az";
            if (c.T == 40) c.T = 16;  // sweep default
            return cmd_sweep_az(c, parse_grid(grid_spec));
        }
        if (pred->parsed()) {
            c.subcommand = "predict";
            return cmd_predict(c);
        }
        if (chan->parsed()) {
            c.subcommand = "channel";
            c.family = "xyz";
            return cmd_channel(c);
        }
        if (resum->parsed()) {
            c.subcommand = "resum";
            c.family = "xyz";
            if (c.T == 40) c.T = 16;
            return cmd_resum(c);
        }
        if (exact_cmd->parsed()) {
            c.subcommand = "exact";
            c.family = "floquet";
            if (c.T == 40) c.T = c.L;
            return cmd_exact(c);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

#include "twostage/propagator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace twostage {

namespace {

double dense_prefactor(int q, int L) {
    return std::pow(double(q) * q + q, -double(L));
}

void check_dense_family(const GateFamily& family) {
    if (family.kind == FamilyKind::FixedFloquet)
        throw std::invalid_argument("dense evolution needs an averaged family");
}

}  // namespace

PurityVector make_indicator_state(const SpinConfig& config) {
    if (config.length > kMaxDenseL)
        throw std::invalid_argument("dense evolution capped at L <= 24");
    PurityVector s;
    s.L = config.length;
    s.coeffs.assign(std::size_t(1) << config.length, 0.0);
    s.coeffs[config.bits] = 1.0;
    return s;
}

void drain_absorbers(PurityVector& state) {
    std::size_t last = state.coeffs.size() - 1;
    state.absorbed_plus += state.coeffs[0];
    state.coeffs[0] = 0.0;
    state.absorbed_minus += state.coeffs[last];
    state.coeffs[last] = 0.0;
}

void apply_time_step(PurityVector& state, const Schedule& schedule, int step,
                     const LocalTransfer& gate, kernels::Exec exec) {
    if (state.L != schedule.L) throw std::invalid_argument("state/schedule size mismatch");
    for (const GatePos& g : schedule.time_step(step))
        kernels::apply_two_site(state.coeffs, state.L, g.a, g.b, gate, exec);
    drain_absorbers(state);
    ++state.time_steps;
}

DecaySeries partition_free_boundary(int x0, const Schedule& schedule,
                                    const GateFamily& family, int T,
                                    kernels::Exec exec) {
    check_dense_family(family);
    if (x0 < 0 || x0 > schedule.L) throw std::invalid_argument("x0 out of range");
    LocalTransfer gate = local_transfer(family);
    PurityVector state = make_indicator_state(domain_wall_config(schedule.L, x0));
    drain_absorbers(state);

    DecaySeries out;
    out.prefactor = dense_prefactor(family.q, schedule.L);
    out.values.reserve(T + 1);
    out.values.push_back(out.prefactor * kernels::ordered_sum(state.coeffs));
    for (int t = 0; t < T; ++t) {
        apply_time_step(state, schedule, t, gate, exec);
        double mass = 0.0;
        for (double c : state.coeffs) mass += std::abs(c);
        if (mass < 1e-300) {
            out.truncated = true;
            break;
        }
        out.values.push_back(out.prefactor * kernels::ordered_sum(state.coeffs));
    }
    return out;
}

DWSeries dw_sector_evolve(int x0, const Schedule& schedule, const GateFamily& family,
                          int T) {
    if (family.kind != FamilyKind::Haar)
        throw std::invalid_argument("domain-wall sector is closed only for Haar");
    if (schedule.boundary != Boundary::Open)
        throw std::invalid_argument("single-wall sector needs open boundaries");
    const int L = schedule.L;
    if (x0 < 0 || x0 > L) throw std::invalid_argument("x0 out of range");
    const double hop = haar_weight(family.q).k / 2.0;

    std::vector<double> cur(L + 1, 0.0);
    cur[x0] = 1.0;
    // x = 0 and x = L are the absorbing all-minus/all-plus configs.
    cur[0] = 0.0;
    cur[L] = 0.0;

    DWSeries out;
    out.delta_z.prefactor = dense_prefactor(family.q, L);
    auto record = [&] {
        out.walls.push_back(cur);
        double s = 0.0;
        for (double v : cur) s += v;
        out.delta_z.values.push_back(out.delta_z.prefactor * s);
    };
    record();

    std::vector<double> next(L + 1);
    for (int t = 0; t < T; ++t) {
        if (schedule.geometry == Geometry::Brickwall) {
            next = cur;
            for (const GatePos& g : schedule.time_step(t)) {
                int x = g.a;  // gate (i, i+1) straddles wall position i
                double m = cur[x];
                next[x] -= m;
                next[x - 1] += hop * m;
                next[x + 1] += hop * m;
            }
            cur.swap(next);
            cur[0] = 0.0;
            cur[L] = 0.0;
        } else {
            for (const GatePos& g : schedule.time_step(t)) {
                int x = g.a;
                double m = cur[x];
                cur[x] = 0.0;
                cur[x - 1] += hop * m;
                cur[x + 1] += hop * m;
                cur[0] = 0.0;
                cur[L] = 0.0;
            }
        }
        double mass = 0.0;
        for (double v : cur) mass += std::abs(v);
        if (mass < 1e-300) {
            out.delta_z.truncated = true;
            break;
        }
        record();
    }
    return out;
}

SpaceTimeTable pinned_table(Pinning pinning, const Schedule& schedule,
                            const GateFamily& family, int T, kernels::Exec exec) {
    check_dense_family(family);
    const int L = schedule.L;
    LocalTransfer gate = local_transfer(family);

    SpinConfig init = (pinning == Pinning::DomainWall)
                          ? domain_wall_config(L, L / 2)
                          : single_minus_config(L, 1);
    PurityVector state = make_indicator_state(init);

    SpaceTimeTable table;
    table.L = L;
    table.T = T;
    table.pinning = pinning;
    table.family = family.label();
    table.geometry = schedule.geometry_name();
    table.boundary = schedule.boundary_name();
    table.z.assign(std::size_t(T + 1) * L, 0.0);

    const double invq = 1.0 / family.q;
    auto record_row = [&](int t) {
        switch (pinning) {
            case Pinning::Magnon:
                for (int x = 1; x <= L; ++x)
                    table.at(x, t) = state.coeffs[single_minus_config(L, x).bits];
                break;
            case Pinning::DomainWall:
                for (int x = 1; x <= L; ++x)
                    table.at(x, t) = state.coeffs[domain_wall_config(L, x).bits];
                break;
            case Pinning::ModifiedMagnon:
                for (int x = 1; x <= L; ++x) {
                    std::uint32_t target = single_minus_config(L, x).bits;
                    double acc = 0.0;
                    for (std::size_t s = 0; s < state.coeffs.size(); ++s) {
                        double c = state.coeffs[s];
                        if (c == 0.0) continue;
                        int mism = std::popcount(std::uint32_t(s) ^ target);
                        acc += c * std::pow(invq, mism);
                    }
                    table.at(x, t) = acc;
                }
                break;
        }
    };

    drain_absorbers(state);
    record_row(0);
    for (int t = 0; t < T; ++t) {
        apply_time_step(state, schedule, t, gate, exec);
        record_row(t + 1);
    }
    return table;
}

const char* pinning_name(Pinning p) {
    switch (p) {
        case Pinning::Magnon: return "magnon";
        case Pinning::DomainWall: return "domain_wall";
        case Pinning::ModifiedMagnon: return "modified_magnon";
    }
    return "?";
}

}  // namespace twostage

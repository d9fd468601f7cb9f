#include "twostage/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace twostage::theory {

double line_tension_ruc(double v, int q) {
    if (q < 2) throw std::invalid_argument("q >= 2");
    if (std::abs(v) > 1.0) throw std::invalid_argument("|v| <= 1");
    auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    double qd = q;
    double e = std::log((qd * qd + 1.0) / qd) + xlogx((1.0 + v) / 2.0) +
               xlogx((1.0 - v) / 2.0);
    return e / std::log(qd);
}

TiltedMinimum minimize_tilted(const std::function<double(double)>& tension, double tol) {
    auto f = [&](double v) { return tension(v) / (1.0 + v); };
    // Golden section on [-1 + eps, 1]; f blows up toward v = -1.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -1.0 + 1e-9, b = 1.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    double v = 0.5 * (a + b);
    return TiltedMinimum{v, f(v)};
}

TiltedMinimum staircase_minimize(int q) {
    return minimize_tilted([q](double v) { return line_tension_ruc(v, q); });
}

double r_mag_analytic(double az) {
    if (az < 0.0 || az > 1.0) throw std::invalid_argument("az in [0, 1]");
    return std::log2(3.0 / (2.0 - std::cos(M_PI * az)));
}

AveragedChannel averaged_channel(double az) {
    XYZWeights w = xyz_weights(1.0, 1.0, az);
    const double q = 2.0;
    AveragedChannel c;
    c.m[0][0] = 1.0;
    c.m[0][1] = 0.0;
    c.m[1][0] = w.b_plus / q + w.h;
    c.m[1][1] = w.h / q + w.b_minus;
    c.lambda_minus = c.m[1][1];
    return c;
}

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Equal: return "equal";
        case Scenario::Phantom: return "phantom";
        case Scenario::Magnon: return "magnon";
    }
    return "?";
}

namespace {

Scenario classify(double r1, double r2) {
    if (std::abs(r2 - r1) <= 1e-9) return Scenario::Equal;
    return r2 > r1 ? Scenario::Phantom : Scenario::Magnon;
}

}  // namespace

RatePrediction predict_rates(const GateFamily& family, Geometry geometry,
                             Boundary boundary) {
    RatePrediction p;
    const double bc_factor = boundary == Boundary::Periodic ? 2.0 : 1.0;

    if (family.kind == FamilyKind::Haar) {
        const double lq = std::log2(double(family.q));
        const double e0_bits = line_tension_ruc(0.0, family.q) * lq;
        if (geometry == Geometry::Brickwall) {
            p.r1 = p.r2 = bc_factor * e0_bits;
            p.formulas_used = {"r1 = r2 = E(0) log2(q) per boundary point"};
        } else {
            p.r1 = bc_factor * staircase_minimize(family.q).value * lq;
            p.r2 = bc_factor * e0_bits;
            p.formulas_used = {"r1 = min_v E(v)/(1+v) log2(q)", "r2 = E(0) log2(q)"};
        }
    } else if (family.kind == FamilyKind::XYZAveraged) {
        if (!family.is_dual_unitary()) {
            p.has_closed_form = false;
            p.notes = "no closed form; use resummation";
            return p;
        }
        double rmag = r_mag_analytic(family.az);
        if (geometry == Geometry::Brickwall) {
            p.r1 = bc_factor;  // flat tension, one bit per layer per wall
            p.r2 = std::min(p.r1, rmag);
            p.formulas_used = {"r1 = 1 per boundary point",
                               "r2 = min(r1, log2(3/(2-cos(pi az))))"};
        } else {
            // Light-cone walls and magnons halve the staircase rates.
            p.r1 = 0.5 * bc_factor;
            p.r2 = std::min(p.r1, 0.5 * rmag);
            p.formulas_used = {"r1 = 1/2 per boundary point",
                               "r2 = min(r1, r_mag/2)"};
        }
        if (rmag >= p.r1) p.notes = "magnon rate capped by the domain wall";
    } else {
        throw std::invalid_argument("no closed-form prediction for fixed circuits");
    }
    p.scenario = classify(p.r1, p.r2);
    return p;
}

}  // namespace twostage::theory

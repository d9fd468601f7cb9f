#pragma once

#include <functional>
#include <string>
#include <vector>

#include "twostage/magnet.hpp"
#include "twostage/schedule.hpp"

namespace twostage::theory {

// Membrane line tension of the averaged random circuit, in units of ln q.
// Endpoints use the 0 log 0 = 0 limit.
double line_tension_ruc(double v, int q);

struct TiltedMinimum {
    double v_star;
    double value;  // min of tension(v) / (1 + v), same units as the tension
};

// Golden-section minimization of tension(v)/(1+v) on (-1, 1].
TiltedMinimum minimize_tilted(const std::function<double(double)>& tension,
                              double tol = 1e-10);

// Specialization to the RUC tension; the closed forms are
// v* = (q-1)^2/(q^2+1) and value = (1/2) ln((q^2-q+1)/q) / ln q.
TiltedMinimum staircase_minimize(int q);

// Magnon decay rate of the averaged dual-unitary family, bits per layer.
double r_mag_analytic(double az);

struct AveragedChannel {
    double m[2][2];       // on (|+>, |->), lower triangular
    double lambda_minus;  // = h/2 + b_minus = (2 - cos(pi az)) / 3
};

AveragedChannel averaged_channel(double az);

enum class Scenario { Equal, Phantom, Magnon };  // r1 = r2, r1 < r2, r1 > r2

const char* scenario_name(Scenario s);

struct RatePrediction {
    double r1 = 0.0;  // bits per time unit
    double r2 = 0.0;
    Scenario scenario = Scenario::Equal;
    bool has_closed_form = true;
    std::string notes;
    std::vector<std::string> formulas_used;
};

RatePrediction predict_rates(const GateFamily& family, Geometry geometry,
                             Boundary boundary);

}  // namespace twostage::theory

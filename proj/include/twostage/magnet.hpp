#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace twostage {

// Effective-spin encoding: site i <-> bit (i-1) of the index,
// bit 0 = plus, bit 1 = minus. All-plus is index 0, all-minus is 2^L - 1.
struct SpinConfig {
    std::uint32_t bits = 0;
    int length = 0;
};

// Domain wall with x plus-sites followed by L-x minus-sites, x in [0, L].
SpinConfig domain_wall_config(int length, int x);

// Single minus at site x (1-based), plus elsewhere.
SpinConfig single_minus_config(int length, int x);

bool is_domain_wall(const SpinConfig& c);

enum class FamilyKind { Haar, XYZAveraged, FixedFloquet };

// Microscopic gate ensemble. Haar(q) averages the full two-site gate;
// XYZAveraged keeps u_sym(ax,ay,az) fixed and averages single-site rotations
// (q = 2 only); FixedFloquet is one non-averaged gate with rotation angle phi.
struct GateFamily {
    FamilyKind kind = FamilyKind::Haar;
    int q = 2;
    double ax = 0.0, ay = 0.0, az = 0.0;
    double phi = 0.0;

    static GateFamily haar(int q);
    static GateFamily xyz(double ax, double ay, double az);
    static GateFamily floquet(double ax, double ay, double az, double phi);

    // (1, 1, az) with tolerance 1e-12 on the first two couplings.
    bool is_dual_unitary() const;

    std::string label() const;
};

struct HaarWeight {
    int q;
    double k;  // total domain-wall hop weight 2q/(q^2+1)
};

struct XYZWeights {
    double u, v;  // cosine sums entering the rates
    double h, b_plus, b_minus;
};

HaarWeight haar_weight(int q);
XYZWeights xyz_weights(double ax, double ay, double az);

// 4x4 two-site update on the basis (++, +-, -+, --), row-major,
// acting on kets evolved from the top boundary toward the bottom.
struct LocalTransfer {
    std::array<double, 16> m{};

    double operator()(int row, int col) const { return m[4 * row + col]; }
    double& operator()(int row, int col) { return m[4 * row + col]; }
};

LocalTransfer local_transfer(const GateFamily& family);

// |mu*> = on_same |mu> + on_other |nu>, defined by <mu|nu*> = delta.
struct DualBasisCoeffs {
    int q;
    double on_same;   // 1 / (q^2 - 1)
    double on_other;  // -1 / (q (q^2 - 1))
};

DualBasisCoeffs dual_basis(int q);

}  // namespace twostage

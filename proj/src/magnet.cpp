#include "twostage/magnet.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twostage {

namespace {

void require_unit_interval(double a, const char* name) {
    if (!(a >= 0.0 && a <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

SpinConfig domain_wall_config(int length, int x) {
    if (length < 1 || length > 31) throw std::invalid_argument("bad length");
    if (x < 0 || x > length) throw std::invalid_argument("domain wall position out of range");
    // x plus-sites (bits 0..x-1 clear), then minus-sites (bits x..L-1 set).
    std::uint32_t all = (length == 31) ? 0x7fffffffu : ((1u << length) - 1u);
    std::uint32_t bits = all & ~((x == 31) ? 0x7fffffffu : ((1u << x) - 1u));
    return SpinConfig{bits, length};
}

SpinConfig single_minus_config(int length, int x) {
    if (x < 1 || x > length) throw std::invalid_argument("site out of range");
    return SpinConfig{1u << (x - 1), length};
}

bool is_domain_wall(const SpinConfig& c) {
    // +...+-...- means bits are a contiguous run of ones ending at the top bit.
    for (int x = 0; x <= c.length; ++x)
        if (domain_wall_config(c.length, x).bits == c.bits) return true;
    return false;
}

GateFamily GateFamily::haar(int q) {
    if (q < 2) throw std::invalid_argument("Haar family requires q >= 2");
    GateFamily f;
    f.kind = FamilyKind::Haar;
    f.q = q;
    return f;
}

GateFamily GateFamily::xyz(double ax, double ay, double az) {
    require_unit_interval(ax, "ax");
    require_unit_interval(ay, "ay");
    require_unit_interval(az, "az");
    GateFamily f;
    f.kind = FamilyKind::XYZAveraged;
    f.q = 2;
    f.ax = ax;
    f.ay = ay;
    f.az = az;
    return f;
}

GateFamily GateFamily::floquet(double ax, double ay, double az, double phi) {
    require_unit_interval(ax, "ax");
    require_unit_interval(ay, "ay");
    require_unit_interval(az, "az");
    GateFamily f;
    f.kind = FamilyKind::FixedFloquet;
    f.q = 2;
    f.ax = ax;
    f.ay = ay;
    f.az = az;
    f.phi = phi;
    return f;
}

bool GateFamily::is_dual_unitary() const {
    if (kind == FamilyKind::Haar) return false;
    return std::abs(ax - 1.0) < 1e-12 && std::abs(ay - 1.0) < 1e-12;
}

std::string GateFamily::label() const {
    std::ostringstream os;
    switch (kind) {
        case FamilyKind::Haar: os << "haar(q=" << q << ")"; break;
        case FamilyKind::XYZAveraged:
            os << "xyz(" << ax << "," << ay << "," << az << ")";
            break;
        case FamilyKind::FixedFloquet:
            os << "floquet(" << ax << "," << ay << "," << az << ";phi=" << phi << ")";
            break;
    }
    return os.str();
}

HaarWeight haar_weight(int q) {
    if (q < 2) throw std::invalid_argument("haar_weight requires q >= 2");
    double qd = q;
    return HaarWeight{q, 2.0 * qd / (qd * qd + 1.0)};
}

XYZWeights xyz_weights(double ax, double ay, double az) {
    require_unit_interval(ax, "ax");
    require_unit_interval(ay, "ay");
    require_unit_interval(az, "az");
    double cx = std::cos(M_PI * ax), cy = std::cos(M_PI * ay), cz = std::cos(M_PI * az);
    XYZWeights w;
    w.u = cx + cy + cz;
    w.v = cx * cy + cy * cz + cz * cx;
    w.h = (3.0 - w.v) / 9.0;
    w.b_plus = (3.0 + 6.0 * w.u + 5.0 * w.v) / 36.0;
    w.b_minus = (3.0 - 6.0 * w.u + 5.0 * w.v) / 36.0;
    return w;
}

LocalTransfer local_transfer(const GateFamily& family) {
    LocalTransfer t;
    switch (family.kind) {
        case FamilyKind::Haar: {
            // |+-> and |-+> each hop to |++> and |--> with weight q/(q^2+1),
            // i.e. half of the total hop weight K of haar_weight(). The fitted
            // decay of the free-boundary series per layer is exactly K.
            double w = haar_weight(family.q).k / 2.0;
            t(0, 0) = 1.0;
            t(0, 1) = w;
            t(0, 2) = w;
            t(3, 1) = w;
            t(3, 2) = w;
            t(3, 3) = 1.0;
            break;
        }
        case FamilyKind::XYZAveraged: {
            XYZWeights w = xyz_weights(family.ax, family.ay, family.az);
            t(0, 0) = 1.0;
            t(0, 1) = w.h;
            t(0, 2) = w.h;
            t(1, 1) = w.b_plus;
            t(1, 2) = w.b_minus;
            t(2, 1) = w.b_minus;
            t(2, 2) = w.b_plus;
            t(3, 1) = w.h;
            t(3, 2) = w.h;
            t(3, 3) = 1.0;
            break;
        }
        case FamilyKind::FixedFloquet:
            throw std::invalid_argument(
                "FixedFloquet has no averaged local transfer; use the exact circuit module");
    }
    return t;
}

DualBasisCoeffs dual_basis(int q) {
    if (q < 2) throw std::invalid_argument("dual_basis requires q >= 2");
    double qd = q;
    double denom = qd * qd - 1.0;
    return DualBasisCoeffs{q, 1.0 / denom, -1.0 / (qd * denom)};
}

}  // namespace twostage

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "twostage/kernels.hpp"
#include "twostage/magnet.hpp"
#include "twostage/propagator.hpp"
#include "twostage/rate_fit.hpp"
#include "twostage/schedule.hpp"

namespace twostage::exact {

inline constexpr int kMaxExactL = 12;  // operator states hold 2^(2L) amplitudes

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// exp(-i pi/4 sum_a c_a sigma^a sigma^a); the three factors commute.
Mat4 symmetric_coupling(double ax, double ay, double az);

// Single-site rotation exp(i (sin(phi) X + cos(phi) Z)) of the Floquet model.
Mat2 floquet_rotation(double phi);

// (u1 (x) u2) u_sym (u3 (x) u4); inputs must be unitary to 1e-12.
Mat4 build_gate(double ax, double ay, double az, const Mat2& u1, const Mat2& u2,
                const Mat2& u3, const Mat2& u4);

// u_sym (u (x) u) with the same rotation on both legs after the coupling.
Mat4 floquet_gate(double ax, double ay, double az, double phi);
Mat4 floquet_gate(const GateFamily& family);

struct DualityCheck {
    bool dual_unitary;
    double residual;  // max |R R^dag - 1| of the spacetime-reshuffled matrix
};

DualityCheck check_dual_unitarity(const Mat4& u, double tol = 1e-12);

// U(t) vectorized as a state on 2L qubits: out legs are bits 0..L-1,
// in legs bits L..2L-1. Unnormalized, <V|V> = 2^L.
struct OperatorState {
    int L = 0;
    int layers = 0;
    std::vector<std::complex<double>> amps;
};

OperatorState identity_operator_state(int L);

// One brickwall layer applied to the out legs.
void apply_operator_layer(OperatorState& state, const Schedule& schedule, int step,
                          const Mat4& gate,
                          kernels::Exec exec = kernels::Exec::Parallel);

double operator_norm2(const OperatorState& state);

// Unnormalized purity of an arbitrary qubit subset (bitmask over 2L qubits).
double region_purity(const OperatorState& state, std::uint64_t region_mask);

// Reduced density matrix of all out legs plus the first in leg, dimension
// 2^(L+1); row index = out | (in1 << L).
Eigen::MatrixXcd rdm_out_in1(const OperatorState& state);

// Purities of every region {out sites in mask} + {in leg of site 1},
// indexed by the site mask. Computed by walking the partial-trace lattice
// of the big RDM, high site first; the keep branch shares storage.
std::vector<double> all_region_purities(const Eigen::Ref<const Eigen::MatrixXcd>& rdm,
                                        int L);

// Magnon overlaps of the fixed Floquet circuit: dual-basis bra pinning a
// single minus at x against |U(t)> with a magnon launched at site 1. Each
// ordinary-basis term is an operator purity; the dual coefficients enter
// as (1/3)^(L-d) (-1/6)^d with d the mismatch count against the target.
SpaceTimeTable magnon_overlap_table(const GateFamily& family, int L, int T,
                                    kernels::Exec exec = kernels::Exec::Parallel);

enum class Side { Left, Right };

// Light-cone channel in the Pauli basis {I,X,Y,Z}. Right moves operators
// from the first gate leg to the second, left the other way. Exact as a
// light-cone propagator only for dual-unitary gates.
struct PauliChannel {
    Eigen::Matrix4d ptm;
    Side side;
    bool exact;          // dual-unitarity held at 1e-12
    double du_residual;
};

PauliChannel light_cone_channel(const Mat4& u, Side side);

struct DoubledChannelReport {
    std::vector<std::complex<double>> eigenvalues;  // all 16, sorted by modulus
    double selected_modulus;  // largest modulus outside the identity sectors
    double r_mag;             // -log2(selected_modulus)
};

// Two copies of the channel; the magnon (swap) component lives entirely in
// the traceless (x) traceless block, whose spectrum is the pairwise products
// of the single-copy traceless eigenvalues.
DoubledChannelReport doubled_channel(const PauliChannel& channel);

// Infinite-temperature correlator tr(a_0(t) b_x) / 2^L for Pauli labels
// 0..3; zero off the light cone, a channel power on it.
double two_point_correlator(int pauli_a, int pauli_b, int x, int t, const Mat4& u);

struct ReverseTransitionResult {
    std::vector<double> c2;  // averaged |C(t)|^2, t = 0..T
    int n_states;
    std::uint64_t seed;
    RateEstimate fit;
};

// Squared boundary correlator (|X1|^2+|Y1|^2+|Z1|^2)/3 averaged over random
// product states, evolved by the fixed Floquet brickwall circuit.
ReverseTransitionResult reverse_transition_correlator(
    double az, double phi, int L, int T, int n_states = 32,
    std::uint64_t seed = 0x5eed5eedULL, FitWindow window = {1, 0},
    kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace twostage::exact

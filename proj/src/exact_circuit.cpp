#include "twostage/exact_circuit.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace twostage::exact {

namespace {

using C = std::complex<double>;

const Mat2& pauli(int mu) {
    static const Mat2 p[4] = {Mat2::Identity(),
                              (Mat2() << 0, 1, 1, 0).finished(),
                              (Mat2() << 0, C(0, -1), C(0, 1), 0).finished(),
                              (Mat2() << 1, 0, 0, -1).finished()};
    return p[mu];
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < 2; ++i2)
                for (int j2 = 0; j2 < 2; ++j2)
                    r(2 * i1 + i2, 2 * j1 + j2) = a(i1, j1) * b(i2, j2);
    return r;
}

bool is_unitary2(const Mat2& u, double tol) {
    return ((u * u.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() < tol);
}

void gate_to_row_major(const Mat4& g, C out[16]) {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[4 * r + c] = g(r, c);
}

}  // namespace

Mat4 symmetric_coupling(double ax, double ay, double az) {
    Mat4 u = Mat4::Identity();
    const double a[3] = {ax, ay, az};
    for (int k = 0; k < 3; ++k) {
        Mat4 ss = kron(pauli(k + 1), pauli(k + 1));
        Mat4 factor = std::cos(M_PI * a[k] / 4.0) * Mat4::Identity() -
                      C(0, 1) * std::sin(M_PI * a[k] / 4.0) * ss;
        u = u * factor;  // the three terms commute, order is irrelevant
    }
    return u;
}

Mat2 floquet_rotation(double phi) {
    Mat2 n = std::sin(phi) * pauli(1) + std::cos(phi) * pauli(3);
    return std::cos(1.0) * Mat2::Identity() + C(0, 1) * std::sin(1.0) * n;
}

Mat4 build_gate(double ax, double ay, double az, const Mat2& u1, const Mat2& u2,
                const Mat2& u3, const Mat2& u4) {
    for (const Mat2* u : {&u1, &u2, &u3, &u4})
        if (!is_unitary2(*u, 1e-12)) throw std::invalid_argument("non-unitary rotation");
    return kron(u1, u2) * symmetric_coupling(ax, ay, az) * kron(u3, u4);
}

Mat4 floquet_gate(double ax, double ay, double az, double phi) {
    Mat2 u = floquet_rotation(phi);
    return symmetric_coupling(ax, ay, az) * kron(u, u);
}

Mat4 floquet_gate(const GateFamily& family) {
    if (family.kind != FamilyKind::FixedFloquet)
        throw std::invalid_argument("fixed gate requested for an averaged family");
    return floquet_gate(family.ax, family.ay, family.az, family.phi);
}

DualityCheck check_dual_unitarity(const Mat4& u, double tol) {
    // (out1,out2; in1,in2) -> (out2,in2; out1,in1)
    Mat4 r;
    for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2)
            for (int i1 = 0; i1 < 2; ++i1)
                for (int i2 = 0; i2 < 2; ++i2)
                    r(2 * o2 + i2, 2 * o1 + i1) = u(2 * o1 + o2, 2 * i1 + i2);
    double res = (r * r.adjoint() - Mat4::Identity()).cwiseAbs().maxCoeff();
    res = std::max(res, (r.adjoint() * r - Mat4::Identity()).cwiseAbs().maxCoeff());
    return DualityCheck{res < tol, res};
}

OperatorState identity_operator_state(int L) {
    if (L < 2 || L > kMaxExactL) throw std::invalid_argument("L out of range");
    OperatorState s;
    s.L = L;
    s.amps.assign(std::size_t(1) << (2 * L), C(0, 0));
    for (std::uint64_t i = 0; i < (std::uint64_t(1) << L); ++i)
        s.amps[(i << L) | i] = 1.0;
    return s;
}

void apply_operator_layer(OperatorState& state, const Schedule& schedule, int step,
                          const Mat4& gate, kernels::Exec exec) {
    if (schedule.geometry != Geometry::Brickwall)
        throw std::invalid_argument("operator evolution is defined on brickwall layers");
    if (schedule.L != state.L) throw std::invalid_argument("size mismatch");
    C g[16];
    gate_to_row_major(gate, g);
    for (const GatePos& p : schedule.time_step(step))
        kernels::apply_two_qubit(state.amps, 2 * state.L, p.a - 1, p.b - 1, g, exec);
    ++state.layers;
}

double operator_norm2(const OperatorState& state) {
    double n = 0.0;
    for (const C& a : state.amps) n += std::norm(a);
    return n;
}

double region_purity(const OperatorState& state, std::uint64_t region_mask) {
    const int n = 2 * state.L;
    std::vector<int> abits, bbits;
    for (int q = 0; q < n; ++q)
        ((region_mask >> q) & 1 ? abits : bbits).push_back(q);
    if (int(abits.size()) > n - int(abits.size())) std::swap(abits, bbits);
    const std::size_t da = std::size_t(1) << abits.size();
    const std::size_t db = std::size_t(1) << bbits.size();

    Eigen::MatrixXcd g(da, db);
    for (std::uint64_t idx = 0; idx < state.amps.size(); ++idx) {
        std::uint64_t a = 0, b = 0;
        for (std::size_t k = 0; k < abits.size(); ++k) a |= ((idx >> abits[k]) & 1) << k;
        for (std::size_t k = 0; k < bbits.size(); ++k) b |= ((idx >> bbits[k]) & 1) << k;
        g(a, b) = state.amps[idx];
    }
    return (g * g.adjoint()).squaredNorm();
}

Eigen::MatrixXcd rdm_out_in1(const OperatorState& state) {
    const int L = state.L;
    const Eigen::Index rows = Eigen::Index(1) << (L + 1);
    const Eigen::Index cols = Eigen::Index(1) << (L - 1);
    // amplitude index = (in << L) | out = (w << (L+1)) | (in1 << L) | out,
    // which is exactly column-major (row = out | in1<<L, col = w)
    Eigen::Map<const Eigen::MatrixXcd> m(state.amps.data(), rows, cols);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(rows, rows);
    h.selfadjointView<Eigen::Lower>().rankUpdate(m);
    h.triangularView<Eigen::StrictlyUpper>() = h.adjoint();
    return h;
}

namespace {

using MatRef = Eigen::Ref<const Eigen::MatrixXcd>;

Eigen::MatrixXcd trace_out_bit(const MatRef& m, int pos) {
    const Eigen::Index d = m.rows() / 2;
    const std::uint64_t low = (std::uint64_t(1) << pos) - 1;
    const std::uint64_t bit = std::uint64_t(1) << pos;
    Eigen::MatrixXcd t(d, d);
    // column-major storage: keep the row index innermost
    for (Eigen::Index b = 0; b < d; ++b) {
        std::uint64_t b0 = (std::uint64_t(b) & low) | ((std::uint64_t(b) & ~low) << 1);
        for (Eigen::Index a = 0; a < d; ++a) {
            std::uint64_t a0 = (std::uint64_t(a) & low) | ((std::uint64_t(a) & ~low) << 1);
            t(a, b) = m(a0, b0) + m(a0 | bit, b0 | bit);
        }
    }
    return t;
}

void purity_walk(const MatRef& m, int bits_left, std::uint32_t kept,
                 std::vector<double>& out) {
    if (bits_left == 0) {
        out[kept] = m.squaredNorm();
        return;
    }
    const int p = bits_left - 1;
    purity_walk(m, bits_left - 1, kept | (std::uint32_t(1) << p), out);
    Eigen::MatrixXcd traced = trace_out_bit(m, p);
    purity_walk(traced, bits_left - 1, kept, out);
}

}  // namespace

std::vector<double> all_region_purities(const Eigen::Ref<const Eigen::MatrixXcd>& rdm,
                                        int L) {
    std::vector<double> out(std::size_t(1) << L, 0.0);
    purity_walk(rdm, L, 0, out);
    return out;
}

SpaceTimeTable magnon_overlap_table(const GateFamily& family, int L, int T,
                                    kernels::Exec exec) {
    Mat4 gate = floquet_gate(family);
    Schedule sched = build_schedule(Geometry::Brickwall, Boundary::Open, L);
    DualBasisCoeffs dual = dual_basis(2);

    // (on_same)^(L-d) (on_other)^d against the single-minus target at x
    std::vector<double> wpow(L + 1);
    for (int d = 0; d <= L; ++d)
        wpow[d] = std::pow(dual.on_same, L - d) * std::pow(dual.on_other, d);

    SpaceTimeTable table;
    table.L = L;
    table.T = T;
    table.pinning = Pinning::Magnon;
    table.family = family.label();
    table.geometry = sched.geometry_name();
    table.boundary = sched.boundary_name();
    table.z.assign(std::size_t(T + 1) * L, 0.0);

    // Evolve the (out + in1) reduced density matrix directly: the traced
    // in legs never see the gates, so H(t+1) = G H(t) G^dag with G acting
    // on the row bits and conj(G) on the column bits. This walks a
    // 2^(2L+2) flat vector instead of re-contracting the operator state.
    const int half = L + 1;
    const Eigen::Index dim = Eigen::Index(1) << half;
    std::vector<C> h(std::size_t(1) << (2 * half), C(0, 0));
    auto at = [&](std::uint64_t r, std::uint64_t c) -> C& {
        return h[(c << half) | r];
    };
    for (std::uint64_t w = 0; w < (std::uint64_t(1) << (L - 1)); ++w) {
        std::uint64_t r0 = w << 1;
        std::uint64_t r1 = (std::uint64_t(1) << L) | (w << 1) | 1;
        at(r0, r0) += 1.0;
        at(r0, r1) += 1.0;
        at(r1, r0) += 1.0;
        at(r1, r1) += 1.0;
    }

    C g[16], gc[16];
    gate_to_row_major(gate, g);
    for (int k = 0; k < 16; ++k) gc[k] = std::conj(g[k]);

    for (int t = 0; t <= T; ++t) {
        if (t > 0) {
            for (const GatePos& p : sched.time_step(t - 1)) {
                kernels::apply_two_qubit(h, 2 * half, p.a - 1, p.b - 1, g, exec);
                kernels::apply_two_qubit(h, 2 * half, half + p.a - 1, half + p.b - 1,
                                         gc, exec);
            }
        }
        Eigen::Map<const Eigen::MatrixXcd> view(h.data(), dim, dim);
        std::vector<double> purity = all_region_purities(view, L);
        for (int x = 1; x <= L; ++x) {
            const std::uint32_t target = std::uint32_t(1) << (x - 1);
            double acc = 0.0;
            for (std::uint32_t mask = 0; mask < purity.size(); ++mask)
                acc += wpow[std::popcount(mask ^ target)] * purity[mask];
            table.at(x, t) = acc;
        }
    }
    return table;
}

PauliChannel light_cone_channel(const Mat4& u, Side side) {
    PauliChannel ch;
    ch.side = side;
    DualityCheck dc = check_dual_unitarity(u);
    ch.exact = dc.dual_unitary;
    ch.du_residual = dc.residual;

    for (int nu = 0; nu < 4; ++nu) {
        Mat4 a = (side == Side::Right) ? kron(pauli(nu), pauli(0))
                                       : kron(pauli(0), pauli(nu));
        Mat4 b = u.adjoint() * a * u;
        Mat2 c2 = Mat2::Zero();
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    if (side == Side::Right)
                        c2(i, j) += 0.5 * b(2 * k + i, 2 * k + j);  // trace first leg
                    else
                        c2(i, j) += 0.5 * b(2 * i + k, 2 * j + k);  // trace second leg
                }
        for (int mu = 0; mu < 4; ++mu) {
            C val = 0.5 * (pauli(mu) * c2).trace();
            ch.ptm(mu, nu) = val.real();
        }
    }
    return ch;
}

DoubledChannelReport doubled_channel(const PauliChannel& channel) {
    DoubledChannelReport rep;
    Eigen::Matrix4d p = channel.ptm;
    Eigen::EigenSolver<Eigen::Matrix4d> es4(p);
    Eigen::Vector4cd lam = es4.eigenvalues();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rep.eigenvalues.push_back(lam(i) * lam(j));
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
              [](const C& a, const C& b) { return std::abs(a) > std::abs(b); });

    // magnon sector: the swap state minus its identity component lives in
    // traceless (x) traceless, an invariant block of the doubled channel
    Eigen::Matrix3d block = p.block<3, 3>(1, 1);
    Eigen::EigenSolver<Eigen::Matrix3d> es3(block);
    double top = 0.0;
    for (int i = 0; i < 3; ++i) top = std::max(top, std::abs(es3.eigenvalues()(i)));
    rep.selected_modulus = top * top;
    rep.r_mag = -std::log2(rep.selected_modulus);
    return rep;
}

double two_point_correlator(int pauli_a, int pauli_b, int x, int t, const Mat4& u) {
    if (pauli_a < 0 || pauli_a > 3 || pauli_b < 0 || pauli_b > 3)
        throw std::invalid_argument("pauli label out of range");
    if (t < 0) throw std::invalid_argument("negative time");
    if (std::abs(x) != t) return 0.0;
    PauliChannel ch = light_cone_channel(u, x >= 0 ? Side::Right : Side::Left);
    Eigen::Matrix4d power = Eigen::Matrix4d::Identity();
    for (int k = 0; k < t; ++k) power = ch.ptm * power;
    return power(pauli_a, pauli_b);
}

ReverseTransitionResult reverse_transition_correlator(double az, double phi, int L,
                                                      int T, int n_states,
                                                      std::uint64_t seed,
                                                      FitWindow window,
                                                      kernels::Exec exec) {
    if (L < 4 || L > kMaxExactL) throw std::invalid_argument("L out of range");
    Mat4 gate = floquet_gate(1.0, 1.0, az, phi);
    C g[16];
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g[4 * r + c] = gate(r, c);
    Schedule sched = build_schedule(Geometry::Brickwall, Boundary::Open, L);

    ReverseTransitionResult res;
    res.n_states = n_states;
    res.seed = seed;
    res.c2.assign(T + 1, 0.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> costh(-1.0, 1.0);

    std::vector<C> psi;
    for (int rep = 0; rep < n_states; ++rep) {
        // random product state, one Bloch vector per site
        psi.assign(std::size_t(1) << L, C(1.0, 0.0));
        for (int q = 0; q < L; ++q) {
            double ct = costh(rng), ph = angle(rng);
            double st = std::sqrt(1.0 - ct * ct);
            C a0 = std::cos(std::acos(ct) / 2.0);
            C a1 = std::polar(std::sin(std::acos(ct) / 2.0), ph);
            (void)st;
            for (std::uint64_t i = 0; i < psi.size(); ++i)
                psi[i] *= ((i >> q) & 1) ? a1 : a0;
        }
        auto site1 = [&]() {
            C s = 0.0;
            double z = 0.0;
            for (std::uint64_t i = 0; i < psi.size(); ++i) {
                double p = std::norm(psi[i]);
                z += ((i & 1) ? -p : p);
                if (!(i & 1)) s += std::conj(psi[i]) * psi[i | 1];
            }
            double ex = 2.0 * s.real(), ey = 2.0 * s.imag();
            return (ex * ex + ey * ey + z * z) / 3.0;
        };
        res.c2[0] += site1();
        for (int t = 0; t < T; ++t) {
            for (const GatePos& p : sched.time_step(t))
                kernels::apply_two_qubit(psi, L, p.a - 1, p.b - 1, g, exec);
            res.c2[t + 1] += site1();
        }
    }
    for (double& v : res.c2) v /= n_states;

    if (window.t_max <= window.t_min) {
        window.t_min = 1;
        window.t_max = std::min(T, (3 * L) / 4);
    }
    res.fit = fit_rate(res.c2, window);
    return res;
}

}  // namespace twostage::exact

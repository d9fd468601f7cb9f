#include "twostage/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace twostage::kernels {

namespace {

struct BlockIndexer {
    int p_lo, p_hi;     // sorted bit positions
    std::uint64_t bit_a, bit_b;

    BlockIndexer(int n, int pa, int pb) {
        if (pa == pb || pa < 0 || pb < 0 || pa >= n || pb >= n)
            throw std::out_of_range("gate bit positions out of range");
        p_lo = std::min(pa, pb);
        p_hi = std::max(pa, pb);
        bit_a = 1ull << pa;
        bit_b = 1ull << pb;
    }

    // Deposit zero bits at p_lo and p_hi into the compact block index u.
    std::uint64_t base(std::uint64_t u) const {
        std::uint64_t lo = u & ((1ull << p_lo) - 1);
        std::uint64_t mid = (u >> p_lo) & ((1ull << (p_hi - p_lo - 1)) - 1);
        std::uint64_t hi = u >> (p_hi - 1);
        return lo | (mid << (p_lo + 1)) | (hi << (p_hi + 1));
    }
};

}  // namespace

void apply_two_site_serial(std::span<double> coeffs, int L, int site_a, int site_b,
                           const LocalTransfer& gate) {
    BlockIndexer ix(L, site_a - 1, site_b - 1);
    const std::uint64_t nblocks = std::uint64_t(1) << (L - 2);
    const double* m = gate.m.data();
    for (std::uint64_t u = 0; u < nblocks; ++u) {
        std::uint64_t i0 = ix.base(u);
        std::uint64_t i1 = i0 | ix.bit_b;  // (+,-): minus on site b
        std::uint64_t i2 = i0 | ix.bit_a;  // (-,+)
        std::uint64_t i3 = i0 | ix.bit_a | ix.bit_b;
        double v0 = coeffs[i0], v1 = coeffs[i1], v2 = coeffs[i2], v3 = coeffs[i3];
        coeffs[i0] = m[0] * v0 + m[1] * v1 + m[2] * v2 + m[3] * v3;
        coeffs[i1] = m[4] * v0 + m[5] * v1 + m[6] * v2 + m[7] * v3;
        coeffs[i2] = m[8] * v0 + m[9] * v1 + m[10] * v2 + m[11] * v3;
        coeffs[i3] = m[12] * v0 + m[13] * v1 + m[14] * v2 + m[15] * v3;
    }
}

void apply_two_site_parallel(std::span<double> coeffs, int L, int site_a, int site_b,
                             const LocalTransfer& gate) {
    BlockIndexer ix(L, site_a - 1, site_b - 1);
    const std::int64_t nblocks = std::int64_t(1) << (L - 2);
    const double* m = gate.m.data();
    double* c = coeffs.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < nblocks; ++u) {
        std::uint64_t i0 = ix.base(std::uint64_t(u));
        std::uint64_t i1 = i0 | ix.bit_b;
        std::uint64_t i2 = i0 | ix.bit_a;
        std::uint64_t i3 = i0 | ix.bit_a | ix.bit_b;
        double v0 = c[i0], v1 = c[i1], v2 = c[i2], v3 = c[i3];
        c[i0] = m[0] * v0 + m[1] * v1 + m[2] * v2 + m[3] * v3;
        c[i1] = m[4] * v0 + m[5] * v1 + m[6] * v2 + m[7] * v3;
        c[i2] = m[8] * v0 + m[9] * v1 + m[10] * v2 + m[11] * v3;
        c[i3] = m[12] * v0 + m[13] * v1 + m[14] * v2 + m[15] * v3;
    }
}

void apply_two_site(std::span<double> coeffs, int L, int site_a, int site_b,
                    const LocalTransfer& gate, Exec exec) {
    if (exec == Exec::Serial)
        apply_two_site_serial(coeffs, L, site_a, site_b, gate);
    else
        apply_two_site_parallel(coeffs, L, site_a, site_b, gate);
}

void apply_two_qubit_serial(std::span<std::complex<double>> amps, int n_qubits, int qa,
                            int qb, const std::complex<double>* g) {
    BlockIndexer ix(n_qubits, qa, qb);
    const std::uint64_t nblocks = std::uint64_t(1) << (n_qubits - 2);
    for (std::uint64_t u = 0; u < nblocks; ++u) {
        std::uint64_t i0 = ix.base(u);
        std::uint64_t i1 = i0 | ix.bit_b;
        std::uint64_t i2 = i0 | ix.bit_a;
        std::uint64_t i3 = i0 | ix.bit_a | ix.bit_b;
        std::complex<double> v0 = amps[i0], v1 = amps[i1], v2 = amps[i2], v3 = amps[i3];
        amps[i0] = g[0] * v0 + g[1] * v1 + g[2] * v2 + g[3] * v3;
        amps[i1] = g[4] * v0 + g[5] * v1 + g[6] * v2 + g[7] * v3;
        amps[i2] = g[8] * v0 + g[9] * v1 + g[10] * v2 + g[11] * v3;
        amps[i3] = g[12] * v0 + g[13] * v1 + g[14] * v2 + g[15] * v3;
    }
}

void apply_two_qubit_parallel(std::span<std::complex<double>> amps, int n_qubits, int qa,
                              int qb, const std::complex<double>* g) {
    BlockIndexer ix(n_qubits, qa, qb);
    const std::int64_t nblocks = std::int64_t(1) << (n_qubits - 2);
    std::complex<double>* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < nblocks; ++u) {
        std::uint64_t i0 = ix.base(std::uint64_t(u));
        std::uint64_t i1 = i0 | ix.bit_b;
        std::uint64_t i2 = i0 | ix.bit_a;
        std::uint64_t i3 = i0 | ix.bit_a | ix.bit_b;
        std::complex<double> v0 = a[i0], v1 = a[i1], v2 = a[i2], v3 = a[i3];
        a[i0] = g[0] * v0 + g[1] * v1 + g[2] * v2 + g[3] * v3;
        a[i1] = g[4] * v0 + g[5] * v1 + g[6] * v2 + g[7] * v3;
        a[i2] = g[8] * v0 + g[9] * v1 + g[10] * v2 + g[11] * v3;
        a[i3] = g[12] * v0 + g[13] * v1 + g[14] * v2 + g[15] * v3;
    }
}

void apply_two_qubit(std::span<std::complex<double>> amps, int n_qubits, int qa, int qb,
                     const std::complex<double>* gate4x4, Exec exec) {
    if (exec == Exec::Serial)
        apply_two_qubit_serial(amps, n_qubits, qa, qb, gate4x4);
    else
        apply_two_qubit_parallel(amps, n_qubits, qa, qb, gate4x4);
}

double ordered_sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace twostage::kernels

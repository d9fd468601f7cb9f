#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "twostage/magnet.hpp"

namespace twostage::kernels {

enum class Exec { Serial, Parallel };

// Contract a 4x4 real gate into the length-2^L coordinate vector at the
// (1-based) sites a and b: out-of-place on the four entangled slots only,
// in-place on the vector. Row-major gate, basis index 2*s_a + s_b.
// The parallel version partitions the 2^(L-2) blocks over OpenMP threads;
// blocks are disjoint, so results are bitwise identical to the serial one.
void apply_two_site_serial(std::span<double> coeffs, int L, int site_a, int site_b,
                           const LocalTransfer& gate);
void apply_two_site_parallel(std::span<double> coeffs, int L, int site_a, int site_b,
                             const LocalTransfer& gate);
void apply_two_site(std::span<double> coeffs, int L, int site_a, int site_b,
                    const LocalTransfer& gate, Exec exec);

// Same blocking for a 4x4 complex gate on an n-qubit amplitude vector,
// qubits 0-based. Gate basis index 2*s_qa + s_qb.
void apply_two_qubit_serial(std::span<std::complex<double>> amps, int n_qubits, int qa,
                            int qb, const std::complex<double>* gate4x4);
void apply_two_qubit_parallel(std::span<std::complex<double>> amps, int n_qubits, int qa,
                              int qb, const std::complex<double>* gate4x4);
void apply_two_qubit(std::span<std::complex<double>> amps, int n_qubits, int qa, int qb,
                     const std::complex<double>* gate4x4, Exec exec);

// Fixed-order sum; kept serial so results do not depend on thread count.
double ordered_sum(std::span<const double> v);

}  // namespace twostage::kernels

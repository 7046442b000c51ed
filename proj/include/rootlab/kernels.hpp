#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64 builds, an AVX2 version; active_backend() picks one at runtime.
// Both versions perform the same floating-point operations in the same order
// without contraction, so their outputs are bit-identical.

#include <span>

#include "rootlab/types.hpp"

namespace rootlab::kernels {

enum class Backend { scalar, avx2 };

const char* to_string(Backend b);

/// AVX2 when compiled in and supported by the CPU, unless the environment
/// variable ROOTLAB_FORCE_SCALAR is set to a non-empty value other than "0".
Backend active_backend();
bool available(Backend b);

/// out[i] = sum_j coeffs[j] * zs[i]^j (Horner).
void horner_many(std::span<const cplx> coeffs, std::span<const cplx> zs, std::span<cplx> out,
                 Backend b = active_backend());

/// out[i] = sum_j weights[j] / (zs[i] - atoms[j]). A point equal to an atom
/// produces a non-finite entry; callers check beforehand.
void cauchy_many(std::span<const cplx> atoms, std::span<const double> weights,
                 std::span<const cplx> zs, std::span<cplx> out, Backend b = active_backend());

struct Escape {
  int step = -1;  ///< first j with |P^j(z)| > radius, or -1
  cplx value{};   ///< P^step(z) when escaped, last iterate otherwise
  friend bool operator==(const Escape&, const Escape&) = default;
};

/// Escape-time iteration of the polynomial with the given coefficients.
void escape_many(std::span<const cplx> coeffs, std::span<const cplx> zs, double radius,
                 int max_iter, std::span<Escape> out, Backend b = active_backend());

namespace detail {
void horner_scalar(std::span<const cplx>, std::span<const cplx>, std::span<cplx>);
void cauchy_scalar(std::span<const cplx>, std::span<const double>, std::span<const cplx>,
                   std::span<cplx>);
void escape_scalar(std::span<const cplx>, std::span<const cplx>, double, int, std::span<Escape>);
void horner_avx2(std::span<const cplx>, std::span<const cplx>, std::span<cplx>);
void cauchy_avx2(std::span<const cplx>, std::span<const double>, std::span<const cplx>,
                 std::span<cplx>);
void escape_avx2(std::span<const cplx>, std::span<const cplx>, double, int, std::span<Escape>);
}  // namespace detail

}  // namespace rootlab::kernels

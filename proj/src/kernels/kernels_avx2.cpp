#include <immintrin.h>

#include "rootlab/kernels.hpp"

// Four points per iteration. A pair of __m256d loads holds z0..z3 interleaved;
// unpacklo/unpackhi split them into real and imaginary vectors with lane
// order (0, 2, 1, 3), and the same unpacks restore the interleaving on store.
// Tails fall through to the scalar routines, which use identical arithmetic.

namespace rootlab::kernels::detail {
namespace {

constexpr int kLaneToPoint[4] = {0, 2, 1, 3};

struct Split {
  __m256d re;
  __m256d im;
};

inline Split load4(const cplx* p) {
  const __m256d a = _mm256_loadu_pd(reinterpret_cast<const double*>(p));
  const __m256d b = _mm256_loadu_pd(reinterpret_cast<const double*>(p + 2));
  return {_mm256_unpacklo_pd(a, b), _mm256_unpackhi_pd(a, b)};
}

inline void store4(cplx* p, Split v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), _mm256_unpacklo_pd(v.re, v.im));
  _mm256_storeu_pd(reinterpret_cast<double*>(p + 2), _mm256_unpackhi_pd(v.re, v.im));
}

inline Split horner4(std::span<const cplx> coeffs, Split z) {
  const std::size_t n = coeffs.size();
  __m256d ar = _mm256_set1_pd(coeffs[n - 1].real());
  __m256d ai = _mm256_set1_pd(coeffs[n - 1].imag());
  for (std::size_t j = n - 1; j-- > 0;) {
    const __m256d cr = _mm256_set1_pd(coeffs[j].real());
    const __m256d ci = _mm256_set1_pd(coeffs[j].imag());
    const __m256d tr =
        _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(ar, z.re), _mm256_mul_pd(ai, z.im)), cr);
    const __m256d ti =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ar, z.im), _mm256_mul_pd(ai, z.re)), ci);
    ar = tr;
    ai = ti;
  }
  return {ar, ai};
}

}  // namespace

void horner_avx2(std::span<const cplx> coeffs, std::span<const cplx> zs, std::span<cplx> out) {
  std::size_t i = 0;
  for (; i + 4 <= zs.size(); i += 4) store4(&out[i], horner4(coeffs, load4(&zs[i])));
  horner_scalar(coeffs, zs.subspan(i), out.subspan(i));
}

void cauchy_avx2(std::span<const cplx> atoms, std::span<const double> weights,
                 std::span<const cplx> zs, std::span<cplx> out) {
  std::size_t i = 0;
  for (; i + 4 <= zs.size(); i += 4) {
    const Split z = load4(&zs[i]);
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const __m256d dr = _mm256_sub_pd(z.re, _mm256_set1_pd(atoms[j].real()));
      const __m256d di = _mm256_sub_pd(z.im, _mm256_set1_pd(atoms[j].imag()));
      const __m256d t = _mm256_div_pd(_mm256_set1_pd(weights[j]),
                                      _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di)));
      sr = _mm256_add_pd(sr, _mm256_mul_pd(dr, t));
      si = _mm256_sub_pd(si, _mm256_mul_pd(di, t));
    }
    store4(&out[i], {sr, si});
  }
  cauchy_scalar(atoms, weights, zs.subspan(i), out.subspan(i));
}

void escape_avx2(std::span<const cplx> coeffs, std::span<const cplx> zs, double radius,
                 int max_iter, std::span<Escape> out) {
  const __m256d r2 = _mm256_set1_pd(radius * radius);
  std::size_t i = 0;
  for (; i + 4 <= zs.size(); i += 4) {
    Split w = load4(&zs[i]);
    __m256d active = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    int steps[4] = {-1, -1, -1, -1};
    for (int it = 0; it <= max_iter; ++it) {
      const __m256d mag2 = _mm256_add_pd(_mm256_mul_pd(w.re, w.re), _mm256_mul_pd(w.im, w.im));
      const __m256d fresh = _mm256_and_pd(active, _mm256_cmp_pd(mag2, r2, _CMP_GT_OQ));
      const int bits = _mm256_movemask_pd(fresh);
      for (int lane = 0; lane < 4; ++lane)
        if (bits & (1 << lane)) steps[kLaneToPoint[lane]] = it;
      active = _mm256_andnot_pd(fresh, active);
      if (_mm256_movemask_pd(active) == 0 || it == max_iter) break;
      const Split next = horner4(coeffs, w);
      w.re = _mm256_blendv_pd(w.re, next.re, active);
      w.im = _mm256_blendv_pd(w.im, next.im, active);
    }
    cplx values[4];
    store4(values, w);
    for (int p = 0; p < 4; ++p) out[i + p] = {steps[p], values[p]};
  }
  escape_scalar(coeffs, zs.subspan(i), radius, max_iter, out.subspan(i));
}

}  // namespace rootlab::kernels::detail

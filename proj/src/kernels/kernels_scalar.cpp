#include "rootlab/kernels.hpp"

// Reference versions. Complex products are spelled out in real arithmetic so
// the AVX2 versions can mirror the exact operation order.

namespace rootlab::kernels::detail {

void horner_scalar(std::span<const cplx> coeffs, std::span<const cplx> zs, std::span<cplx> out) {
  const std::size_t n = coeffs.size();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double zr = zs[i].real(), zi = zs[i].imag();
    double ar = coeffs[n - 1].real(), ai = coeffs[n - 1].imag();
    for (std::size_t j = n - 1; j-- > 0;) {
      const double tr = (ar * zr - ai * zi) + coeffs[j].real();
      const double ti = (ar * zi + ai * zr) + coeffs[j].imag();
      ar = tr;
      ai = ti;
    }
    out[i] = {ar, ai};
  }
}

void cauchy_scalar(std::span<const cplx> atoms, std::span<const double> weights,
                   std::span<const cplx> zs, std::span<cplx> out) {
  for (std::size_t i = 0; i < zs.size(); ++i) {
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const double dr = zs[i].real() - atoms[j].real();
      const double di = zs[i].imag() - atoms[j].imag();
      const double t = weights[j] / (dr * dr + di * di);
      sr = sr + dr * t;
      si = si - di * t;
    }
    out[i] = {sr, si};
  }
}

void escape_scalar(std::span<const cplx> coeffs, std::span<const cplx> zs, double radius,
                   int max_iter, std::span<Escape> out) {
  const std::size_t n = coeffs.size();
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    double wr = zs[i].real(), wi = zs[i].imag();
    int step = -1;
    for (int it = 0; it <= max_iter; ++it) {
      if (wr * wr + wi * wi > r2) {
        step = it;
        break;
      }
      if (it == max_iter) break;
      double ar = coeffs[n - 1].real(), ai = coeffs[n - 1].imag();
      for (std::size_t j = n - 1; j-- > 0;) {
        const double tr = (ar * wr - ai * wi) + coeffs[j].real();
        const double ti = (ar * wi + ai * wr) + coeffs[j].imag();
        ar = tr;
        ai = ti;
      }
      wr = ar;
      wi = ai;
    }
    out[i] = {step, {wr, wi}};
  }
}

}  // namespace rootlab::kernels::detail

#include <cstdlib>
#include <cstring>

#include "rootlab/kernels.hpp"

namespace rootlab::kernels {

const char* to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool available(Backend b) {
  if (b == Backend::scalar) return true;
#if defined(ROOTLAB_HAVE_AVX2)
  static const bool has_avx2 = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has_avx2;
#else
  return false;
#endif
}

Backend active_backend() {
  static const Backend chosen = [] {
    const char* force = std::getenv("ROOTLAB_FORCE_SCALAR");
    if (force && *force && std::strcmp(force, "0") != 0) return Backend::scalar;
    return available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
  }();
  return chosen;
}

namespace {

Backend usable(Backend b) { return available(b) ? b : Backend::scalar; }

void check_sizes(std::size_t in, std::size_t out) {
  if (in != out) throw Error(ErrorKind::invalid_argument, "kernel output size mismatch");
}

}  // namespace

void horner_many(std::span<const cplx> coeffs, std::span<const cplx> zs, std::span<cplx> out,
                 Backend b) {
  check_sizes(zs.size(), out.size());
  if (coeffs.empty()) throw Error(ErrorKind::invalid_argument, "empty coefficient list");
#if defined(ROOTLAB_HAVE_AVX2)
  if (usable(b) == Backend::avx2) return detail::horner_avx2(coeffs, zs, out);
#endif
  (void)usable(b);
  detail::horner_scalar(coeffs, zs, out);
}

void cauchy_many(std::span<const cplx> atoms, std::span<const double> weights,
                 std::span<const cplx> zs, std::span<cplx> out, Backend b) {
  check_sizes(zs.size(), out.size());
  check_sizes(atoms.size(), weights.size());
#if defined(ROOTLAB_HAVE_AVX2)
  if (usable(b) == Backend::avx2) return detail::cauchy_avx2(atoms, weights, zs, out);
#endif
  (void)usable(b);
  detail::cauchy_scalar(atoms, weights, zs, out);
}

void escape_many(std::span<const cplx> coeffs, std::span<const cplx> zs, double radius,
                 int max_iter, std::span<Escape> out, Backend b) {
  check_sizes(zs.size(), out.size());
  if (coeffs.empty()) throw Error(ErrorKind::invalid_argument, "empty coefficient list");
#if defined(ROOTLAB_HAVE_AVX2)
  if (usable(b) == Backend::avx2) return detail::escape_avx2(coeffs, zs, radius, max_iter, out);
#endif
  (void)usable(b);
  detail::escape_scalar(coeffs, zs, radius, max_iter, out);
}

}  // namespace rootlab::kernels

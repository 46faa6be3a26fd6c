#include <atomic>
#include <cstdlib>
#include <string>

#include "ness/error.hpp"
#include "ness/kernels.hpp"

namespace ness::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(NESS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("NESS_ISA"); env != nullptr && std::string(env) == "scalar") {
    return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name(isa)) + " is not available");
  }
  current().store(isa, std::memory_order_relaxed);
}

void apply(const PackedGenerator& gen, const StateVector& x, StateVector& y) {
#if defined(NESS_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::apply(gen, x, y);
#endif
  scalar::apply(gen, x, y);
}

void axpy(double a, const StateVector& x, StateVector& y) {
#if defined(NESS_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::axpy(a, x, y);
#endif
  scalar::axpy(a, x, y);
}

}  // namespace ness::kernels

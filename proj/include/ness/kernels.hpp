#pragma once

// Data-parallel inner loops of the Lindblad integrator: the 16x16 complex
// generator mat-vec and stage accumulation. Complex data is stored split
// (real/imag planes) so both scalar and AVX2 paths stream contiguous doubles.

#include <array>
#include <string_view>

namespace ness::kernels {

inline constexpr int kDim = 16;

struct alignas(32) StateVector {
  std::array<double, kDim> re{};
  std::array<double, kDim> im{};
};

// Column-major: entry (i, j) lives at j * kDim + i.
struct alignas(32) PackedGenerator {
  std::array<double, kDim * kDim> re{};
  std::array<double, kDim * kDim> im{};
};

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa);
bool isa_available(Isa isa);

// Defaults to the best available ISA; NESS_ISA=scalar in the environment forces the reference path.
Isa active_isa();
// Throws ness::Error(InvalidArgument) if the ISA is not available on this CPU/build.
void set_active_isa(Isa isa);

// y = L x
void apply(const PackedGenerator& gen, const StateVector& x, StateVector& y);
// y += a x
void axpy(double a, const StateVector& x, StateVector& y);

namespace scalar {
void apply(const PackedGenerator& gen, const StateVector& x, StateVector& y);
void axpy(double a, const StateVector& x, StateVector& y);
}  // namespace scalar

#if defined(NESS_HAVE_AVX2)
namespace avx2 {
void apply(const PackedGenerator& gen, const StateVector& x, StateVector& y);
void axpy(double a, const StateVector& x, StateVector& y);
}  // namespace avx2
#endif

}  // namespace ness::kernels

#pragma once

#include <random>

#include "ness/model.hpp"

namespace ness::test {

inline Matrix4c random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix4c a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = complex(g(rng), g(rng));
  Matrix4c rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline SystemParams random_system(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> eps(0.1, 4.0);
  std::uniform_real_distribution<double> k(0.5, 2.0);
  return {eps(rng), eps(rng), k(rng)};
}

inline BathParams random_baths(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.2, 3.0);
  std::uniform_real_distribution<double> g(0.005, 0.05);
  return {t(rng), t(rng), g(rng), g(rng)};
}

}  // namespace ness::test

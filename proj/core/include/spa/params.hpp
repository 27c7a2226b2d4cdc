#pragma once

#include <cstdint>

#include "spa/geometry.hpp"

namespace spa {

/// Parameters of the SPA process.
struct ModelParams {
  double p = 0.7;                       // link probability
  double a1 = 1.0;                      // degree coefficient of the sphere volume
  double a2 = 30.0 / 7.0;               // offset of the sphere volume
  int dimension = 2;
  Norm norm = Norm::Linf;
  std::uint64_t n = 100000;             // final vertex count
  std::uint64_t seed = 1;

  /// Throws DomainError naming the first violated constraint.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// A2 that makes the asymptotic mean out-degree equal `target_degree`
/// when A1 = 1: target * (1 - p) / p.
double a2_for_mean_degree(double p, double target_degree = 10.0);

/// Volume of the sphere of influence: min((a1*in_degree + a2)/t, 1).
inline double sphere_volume(std::uint64_t in_degree, std::uint64_t t, double a1, double a2) noexcept {
  const double v = (a1 * static_cast<double>(in_degree) + a2) / static_cast<double>(t);
  return v < 1.0 ? v : 1.0;
}

double sphere_volume(std::uint64_t in_degree, std::uint64_t t, const ModelParams& params);

/// Radius and volume of one sphere of influence, computed together so the
/// clamp can be applied in membership tests.
struct Sphere {
  double volume;
  double radius;
};

/// Sphere geometry for a vertex of the given in-degree at time t >= 1.
Sphere sphere_of_influence(std::uint64_t in_degree, std::uint64_t t, const ModelParams& params);

}  // namespace spa

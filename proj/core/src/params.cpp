#include "spa/params.hpp"

#include <cmath>
#include <string>

#include "spa/error.hpp"

namespace spa {

void ModelParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (!(a1 > 0.0)) throw DomainError("A1 must be > 0");
  if (!(p * a1 < 1.0)) throw DomainError("p*A1 must be < 1");
  if (!(a2 > 0.0)) throw DomainError("A2 must be > 0");
  if (dimension < 1) throw DomainError("dimension must be >= 1");
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > 0xFFFFFFFEull) throw DomainError("n must fit in 32 bits");
}

double a2_for_mean_degree(double p, double target_degree) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1] to derive A2");
  return target_degree * (1.0 - p) / p;
}

double sphere_volume(std::uint64_t in_degree, std::uint64_t t, const ModelParams& params) {
  if (t < 1) throw UsageError("sphere_volume: t must be >= 1");
  return sphere_volume(in_degree, t, params.a1, params.a2);
}

Sphere sphere_of_influence(std::uint64_t in_degree, std::uint64_t t, const ModelParams& params) {
  const double volume = sphere_volume(in_degree, t, params);
  return {volume, volume_to_radius(volume, params.dimension, params.norm)};
}

}  // namespace spa

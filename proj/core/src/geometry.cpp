#include "spa/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "spa/error.hpp"

namespace spa {

namespace {

// Volume of the unit ball: 2^m for Linf (side 2), pi^(m/2)/Gamma(m/2+1) for L2.
double unit_ball_volume(int dimension, Norm norm) {
  const double m = dimension;
  if (norm == Norm::Linf) return std::pow(2.0, m);
  return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
}

}  // namespace

std::string_view to_string(Norm norm) {
  return norm == Norm::L2 ? "l2" : "linf";
}

Norm parse_norm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "l2") return Norm::L2;
  if (lower == "linf") return Norm::Linf;
  throw UsageError("unknown norm '" + std::string(text) + "' (expected l2 or linf)");
}

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw UsageError("torus point needs at least one coordinate");
  for (double c : coords_) {
    if (!(c >= 0.0 && c < 1.0)) throw UsageError("torus coordinate outside [0,1)");
  }
}

double torus_distance(std::span<const double> x, std::span<const double> y, Norm norm) {
  if (x.size() != y.size()) throw UsageError("torus_distance: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double raw = std::fabs(x[i] - y[i]);
    const double d = std::min(raw, 1.0 - raw);
    if (norm == Norm::Linf) {
      acc = std::max(acc, d);
    } else {
      acc += d * d;
    }
  }
  return norm == Norm::Linf ? acc : std::sqrt(acc);
}

double torus_distance(const TorusPoint& x, const TorusPoint& y, Norm norm) {
  return torus_distance(x.coords(), y.coords(), norm);
}

double volume_to_radius(double volume, int dimension, Norm norm) {
  if (dimension < 1) throw UsageError("dimension must be >= 1");
  if (!(volume > 0.0 && volume <= 1.0)) throw UsageError("volume must lie in (0, 1]");
  if (norm == Norm::Linf) return std::pow(volume, 1.0 / dimension) / 2.0;
  return std::pow(volume / unit_ball_volume(dimension, norm), 1.0 / dimension);
}

double radius_to_volume(double radius, int dimension, Norm norm) {
  if (dimension < 1) throw UsageError("dimension must be >= 1");
  if (radius < 0.0) throw UsageError("radius must be >= 0");
  const double v = unit_ball_volume(dimension, norm) * std::pow(radius, dimension);
  return std::min(v, 1.0);
}

double max_torus_distance(int dimension, Norm norm) {
  return norm == Norm::Linf ? 0.5 : 0.5 * std::sqrt(static_cast<double>(dimension));
}

}  // namespace spa

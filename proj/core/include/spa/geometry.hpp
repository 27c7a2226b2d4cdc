#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace spa {

enum class Norm { L2, Linf };

std::string_view to_string(Norm norm);
// Accepts "l2" / "linf" (case-insensitive). Throws UsageError otherwise.
Norm parse_norm(std::string_view text);

/// A point of the unit torus [0,1)^m.
class TorusPoint {
 public:
  TorusPoint() = default;
  // Throws UsageError if empty or any coordinate is outside [0,1).
  explicit TorusPoint(std::vector<double> coords);

  int dimension() const noexcept { return static_cast<int>(coords_.size()); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  std::vector<double> coords_;
};

/// Torus distance: per-coordinate wrapped difference min(|dx|, 1-|dx|),
/// combined by the chosen norm. Throws UsageError on dimension mismatch.
double torus_distance(std::span<const double> x, std::span<const double> y, Norm norm);
double torus_distance(const TorusPoint& x, const TorusPoint& y, Norm norm);

/// Radius of the (unwrapped) ball of volume v in dimension m.
/// Throws UsageError unless 0 < v <= 1 and m >= 1.
double volume_to_radius(double volume, int dimension, Norm norm);

/// Volume of the (unwrapped) ball of radius r, capped at 1.
double radius_to_volume(double radius, int dimension, Norm norm);

/// Largest torus distance attainable: 0.5 for Linf, 0.5*sqrt(m) for L2.
double max_torus_distance(int dimension, Norm norm);

/// Closed-ball membership shared by every generator and census. A sphere whose
/// volume is clamped at 1 is the whole torus, regardless of its nominal radius.
inline bool within_sphere(double distance, double volume, double radius) noexcept {
  return volume >= 1.0 || distance <= radius;
}

}  // namespace spa

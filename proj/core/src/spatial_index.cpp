#include "spa/spatial_index.hpp"

#include <algorithm>
#include <cmath>

#include "spa/error.hpp"

namespace spa {

namespace {

int level_cap(std::uint64_t final_n, int dimension) {
  const double log_n = std::log2(static_cast<double>(std::max<std::uint64_t>(final_n, 2)));
  int levels = static_cast<int>(std::ceil(log_n / dimension)) + 2;
  // Cell keys pack level*dimension bits into 64.
  levels = std::min(levels, 63 / dimension);
  return std::max(levels, 1);
}

}  // namespace

SpatialIndex::SpatialIndex(const ModelParams& params, std::uint64_t final_n)
    : params_(params), levels_(static_cast<std::size_t>(level_cap(final_n, params.dimension))) {
  params_.validate();
}

bool SpatialIndex::contains(VertexId id) const noexcept {
  return id < level_.size() && level_[id] != kAbsent;
}

std::span<const double> SpatialIndex::position(VertexId id) const noexcept {
  const auto m = static_cast<std::size_t>(params_.dimension);
  return {positions_.data() + static_cast<std::size_t>(id) * m, m};
}

std::uint64_t SpatialIndex::cell_key(std::span<const double> x, int level) const noexcept {
  const std::uint64_t cells = std::uint64_t{1} << level;
  std::uint64_t key = 0;
  for (std::size_t k = x.size(); k-- > 0;) {
    const auto c = static_cast<std::uint64_t>(std::ldexp(x[k], level));
    key = key * cells + std::min(c, cells - 1);
  }
  return key;
}

int SpatialIndex::level_for(const Sphere& sphere) const noexcept {
  if (sphere.volume >= 1.0) return 0;
  const int max_level = level_count() - 1;
  int level = std::clamp(static_cast<int>(std::floor(-std::log2(sphere.radius))), 0, max_level);
  while (level > 0 && sphere.radius > std::ldexp(1.0, -level)) --level;
  while (level < max_level && sphere.radius <= std::ldexp(1.0, -(level + 1))) ++level;
  return level;
}

void SpatialIndex::ensure_capacity(VertexId id) {
  const std::size_t need = static_cast<std::size_t>(id) + 1;
  if (level_.size() >= need) return;
  const std::size_t grow = std::max(need, level_.size() * 2);
  positions_.resize(grow * static_cast<std::size_t>(params_.dimension), 0.0);
  degree_.resize(grow, 0);
  level_.resize(grow, kAbsent);
  cell_.resize(grow, 0);
  slot_.resize(grow, 0);
}

void SpatialIndex::place(VertexId id, int level) {
  const std::uint64_t key = cell_key(position(id), level);
  Bucket& bucket = levels_[static_cast<std::size_t>(level)][key];
  level_[id] = static_cast<std::int8_t>(level);
  cell_[id] = key;
  slot_[id] = static_cast<std::uint32_t>(bucket.size());
  bucket.push_back(id);
}

void SpatialIndex::unplace(VertexId id) {
  Level& level = levels_[static_cast<std::size_t>(level_[id])];
  auto it = level.find(cell_[id]);
  Bucket& bucket = it->second;
  const VertexId moved = bucket.back();
  bucket[slot_[id]] = moved;
  slot_[moved] = slot_[id];
  bucket.pop_back();
  if (bucket.empty()) level.erase(it);
  level_[id] = kAbsent;
}

void SpatialIndex::insert(VertexId id, std::span<const double> x, std::uint64_t in_degree) {
  if (id == 0) throw UsageError("vertex ids are 1-based");
  if (time_ < 1) throw UsageError("insert requires time >= 1; call advance first");
  if (x.size() != static_cast<std::size_t>(params_.dimension)) {
    throw UsageError("insert: dimension mismatch");
  }
  if (contains(id)) throw UsageError("insert: duplicate vertex id " + std::to_string(id));
  ensure_capacity(id);
  std::copy(x.begin(), x.end(), positions_.begin() + static_cast<std::ptrdiff_t>(id) * params_.dimension);
  degree_[id] = in_degree;
  place(id, level_for(sphere_of_influence(in_degree, time_, params_)));
  ++size_;
}

void SpatialIndex::set_in_degree(VertexId id, std::uint64_t in_degree) {
  if (!contains(id)) throw UsageError("set_in_degree: unknown vertex id " + std::to_string(id));
  degree_[id] = in_degree;
  const int level = level_for(sphere_of_influence(in_degree, time_, params_));
  if (level != level_[id]) {
    unplace(id);
    place(id, level);
  }
}

void SpatialIndex::advance(std::uint64_t t_new) {
  if (t_new != time_ + 1) throw UsageError("advance: time must move forward by exactly one step");
  time_ = t_new;
  if (time_ >= 2 * last_sweep_) {
    sweep();
    last_sweep_ = time_;
  }
}

void SpatialIndex::sweep() {
  ++sweeps_;
  for (VertexId id = 1; id < level_.size(); ++id) {
    if (level_[id] == kAbsent) continue;
    const int level = level_for(sphere_of_influence(degree_[id], time_, params_));
    if (level != level_[id]) {
      unplace(id);
      place(id, level);
    }
  }
}

std::vector<VertexId> SpatialIndex::covering_spheres(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(params_.dimension)) {
    throw UsageError("covering_spheres: dimension mismatch");
  }
  std::vector<VertexId> out;
  if (size_ == 0) return out;

  const int m = params_.dimension;
  std::vector<std::vector<std::uint64_t>> axis(static_cast<std::size_t>(m));
  std::vector<std::size_t> odometer(static_cast<std::size_t>(m));

  for (int level = 0; level < level_count(); ++level) {
    const Level& cells = levels_[static_cast<std::size_t>(level)];
    if (cells.empty()) continue;
    const std::uint64_t count = std::uint64_t{1} << level;

    // Distinct wrapped cell coordinates adjacent to x along each axis.
    for (int k = 0; k < m; ++k) {
      auto& coords = axis[static_cast<std::size_t>(k)];
      coords.clear();
      if (count <= 3) {
        for (std::uint64_t c = 0; c < count; ++c) coords.push_back(c);
      } else {
        const auto c = std::min(static_cast<std::uint64_t>(std::ldexp(x[static_cast<std::size_t>(k)], level)),
                                count - 1);
        coords.push_back((c + count - 1) % count);
        coords.push_back(c);
        coords.push_back((c + 1) % count);
      }
    }

    std::fill(odometer.begin(), odometer.end(), 0);
    while (true) {
      std::uint64_t key = 0;
      for (int k = m; k-- > 0;) {
        key = key * count + axis[static_cast<std::size_t>(k)][odometer[static_cast<std::size_t>(k)]];
      }
      if (auto it = cells.find(key); it != cells.end()) {
        for (VertexId id : it->second) {
          const Sphere s = sphere_of_influence(degree_[id], time_, params_);
          if (within_sphere(torus_distance(x, position(id), params_.norm), s.volume, s.radius)) {
            out.push_back(id);
          }
        }
      }
      int k = 0;
      while (k < m && ++odometer[static_cast<std::size_t>(k)] == axis[static_cast<std::size_t>(k)].size()) {
        odometer[static_cast<std::size_t>(k)] = 0;
        ++k;
      }
      if (k == m) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

InfluenceEntry SpatialIndex::entry(VertexId id) const {
  if (!contains(id)) throw UsageError("entry: unknown vertex id " + std::to_string(id));
  const Sphere s = sphere_of_influence(degree_[id], time_, params_);
  const auto pos = position(id);
  return {id, std::vector<double>(pos.begin(), pos.end()), degree_[id], s.volume, s.radius, level_[id]};
}

}  // namespace spa

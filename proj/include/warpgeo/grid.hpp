#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "warpgeo/errors.hpp"

namespace warpgeo {

/// Axis-aligned parameter box.
struct Box {
  std::vector<std::pair<double, double>> ranges;

  int dim() const { return static_cast<int>(ranges.size()); }
  double lo(int i) const { return ranges[static_cast<size_t>(i)].first; }
  double hi(int i) const { return ranges[static_cast<size_t>(i)].second; }
  double width(int i) const { return hi(i) - lo(i); }

  bool contains(const std::vector<double>& u, double margin = 0.0) const {
    if (static_cast<int>(u.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (u[static_cast<size_t>(i)] < lo(i) + margin || u[static_cast<size_t>(i)] > hi(i) - margin)
        return false;
    return true;
  }
};

/// Uniform interior lattice: per axis, points lo + (j+1)*w/(n+1), j = 0..n-1.
inline std::vector<std::vector<double>> interior_grid(const Box& box, int per_axis) {
  require(per_axis >= 1, errc::invalid_argument, "grid needs >= 1 point per axis");
  const int d = box.dim();
  std::vector<std::vector<double>> pts;
  std::vector<int> idx(static_cast<size_t>(d), 0);
  const long total = [&] {
    long t = 1;
    for (int i = 0; i < d; ++i) t *= per_axis;
    return t;
  }();
  pts.reserve(static_cast<size_t>(total));
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    std::vector<double> u(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      int j = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      u[static_cast<size_t>(i)] =
          box.lo(i) + (j + 1) * box.width(i) / static_cast<double>(per_axis + 1);
    }
    pts.push_back(std::move(u));
  }
  return pts;
}

/// Thread cap from WARPGEO_THREADS (0 or unset = hardware auto).
inline unsigned thread_cap() {
  const char* env = std::getenv("WARPGEO_THREADS");
  long v = 0;
  if (env && *env) v = std::strtol(env, nullptr, 10);
  if (v <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
  }
  return static_cast<unsigned>(v);
}

/// Deterministic parallel map: f(i) must write only to slot i of preallocated storage.
/// Chunking depends only on n, so results are identical for any thread count.
template <class F>
void parallel_for_index(std::size_t n, F&& f) {
  unsigned nt = thread_cap();
  if (nt <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  if (nt > n) nt = static_cast<unsigned>(n);
  std::vector<std::thread> workers;
  workers.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  for (unsigned t = 0; t < nt; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = b + chunk < n ? b + chunk : n;
    if (b >= e) break;
    workers.emplace_back([&, b, e] {
      for (std::size_t i = b; i < e; ++i) f(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace warpgeo

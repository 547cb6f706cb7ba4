#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "rlxi/common.hpp"

namespace rlxi {

inline constexpr unsigned kMaxPayloads = 4;

struct GridPoint {
  std::uint32_t x = 0;  // rank in [1..nx]
  std::uint32_t y = 0;  // rank in [1..ny]
  std::array<std::uint64_t, kMaxPayloads> w{};
};

// Static rank-space grid with componentwise range sums and point reporting.
// Layered merge structure: a segment tree over x, each node holding its
// points sorted by y with per-payload prefix sums.
class WeightedGrid {
 public:
  WeightedGrid() = default;
  WeightedGrid(std::uint32_t nx, std::uint32_t ny, std::vector<GridPoint> points,
               unsigned payloads);

  std::uint32_t nx() const { return nx_; }
  std::uint32_t ny() const { return ny_; }
  unsigned payloads() const { return payloads_; }
  std::size_t size() const { return points_.size(); }
  const GridPoint& point(std::uint32_t id) const { return points_[id]; }
  const std::vector<GridPoint>& points() const { return points_; }

  // Componentwise payload sum over [x1..x2] x [y1..y2], ranks inclusive.
  // Inverted ranges yield zeros; out-of-universe ranks are an error.
  std::array<std::uint64_t, kMaxPayloads> sum(std::uint32_t x1, std::uint32_t x2,
                                              std::uint32_t y1, std::uint32_t y2) const;

  // Calls fn(id) once per point in the rectangle; ids index points().
  void report(std::uint32_t x1, std::uint32_t x2, std::uint32_t y1, std::uint32_t y2,
              const std::function<void(std::uint32_t)>& fn) const;

 private:
  struct Node {
    std::vector<std::uint32_t> ys;
    std::vector<std::uint32_t> ids;
    std::vector<std::uint64_t> pre;  // (ys.size()+1) * payloads, running sums
  };

  void check_rect(std::uint32_t x1, std::uint32_t x2, std::uint32_t y1,
                  std::uint32_t y2) const;
  template <typename Fn>
  void visit_cover(std::uint32_t x1, std::uint32_t x2, Fn&& fn) const;

  std::uint32_t nx_ = 0;
  std::uint32_t ny_ = 0;
  unsigned payloads_ = 1;
  std::size_t base_ = 0;
  std::vector<GridPoint> points_;
  std::vector<Node> nodes_;
};

}  // namespace rlxi

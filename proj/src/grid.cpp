#include "rlxi/grid.hpp"

#include <algorithm>

namespace rlxi {

WeightedGrid::WeightedGrid(std::uint32_t nx, std::uint32_t ny, std::vector<GridPoint> points,
                           unsigned payloads)
    : nx_(nx), ny_(ny), payloads_(payloads), points_(std::move(points)) {
  if (payloads_ < 1 || payloads_ > kMaxPayloads)
    raise(ErrorCode::RankOutOfRange, "payload count must be in [1..4]");
  std::array<unsigned __int128, kMaxPayloads> totals{};
  for (const GridPoint& p : points_) {
    if (p.x < 1 || p.x > nx_ || p.y < 1 || p.y > ny_)
      raise(ErrorCode::RankOutOfRange, "point rank outside grid universe");
    for (unsigned c = 0; c < payloads_; ++c) totals[c] += p.w[c];
  }
  constexpr unsigned __int128 kLimit = (unsigned __int128)1 << 63;
  for (unsigned c = 0; c < payloads_; ++c)
    if (totals[c] >= kLimit)
      raise(ErrorCode::OverflowRisk, "payload totals do not fit a 63-bit sum");

  base_ = 1;
  while (base_ < std::max<std::size_t>(nx_, 1)) base_ <<= 1;
  nodes_.assign(2 * base_, {});

  std::vector<std::uint32_t> order(points_.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const GridPoint &pa = points_[a], &pb = points_[b];
    if (pa.y != pb.y) return pa.y < pb.y;
    return a < b;
  });
  for (std::uint32_t id : order) {
    Node& leaf = nodes_[base_ + points_[id].x - 1];
    leaf.ys.push_back(points_[id].y);
    leaf.ids.push_back(id);
  }
  for (std::size_t v = base_ - 1; v >= 1; --v) {
    const Node &l = nodes_[2 * v], &r = nodes_[2 * v + 1];
    Node& n = nodes_[v];
    n.ys.resize(l.ys.size() + r.ys.size());
    n.ids.resize(n.ys.size());
    std::size_t i = 0, j = 0, k = 0;
    while (i < l.ys.size() && j < r.ys.size()) {
      bool left = l.ys[i] != r.ys[j] ? l.ys[i] < r.ys[j] : l.ids[i] < r.ids[j];
      if (left) {
        n.ys[k] = l.ys[i];
        n.ids[k++] = l.ids[i++];
      } else {
        n.ys[k] = r.ys[j];
        n.ids[k++] = r.ids[j++];
      }
    }
    for (; i < l.ys.size(); ++i, ++k) n.ys[k] = l.ys[i], n.ids[k] = l.ids[i];
    for (; j < r.ys.size(); ++j, ++k) n.ys[k] = r.ys[j], n.ids[k] = r.ids[j];
  }
  for (Node& n : nodes_) {
    n.pre.assign((n.ys.size() + 1) * payloads_, 0);
    for (std::size_t i = 0; i < n.ys.size(); ++i)
      for (unsigned c = 0; c < payloads_; ++c)
        n.pre[(i + 1) * payloads_ + c] = n.pre[i * payloads_ + c] + points_[n.ids[i]].w[c];
  }
}

void WeightedGrid::check_rect(std::uint32_t x1, std::uint32_t x2, std::uint32_t y1,
                              std::uint32_t y2) const {
  if (x1 < 1 || x2 > nx_ || y1 < 1 || y2 > ny_)
    raise(ErrorCode::RankOutOfRange, "query rank outside grid universe");
}

template <typename Fn>
void WeightedGrid::visit_cover(std::uint32_t x1, std::uint32_t x2, Fn&& fn) const {
  std::size_t l = x1 - 1 + base_;
  std::size_t r = x2 + base_;  // exclusive
  while (l < r) {
    if (l & 1) fn(nodes_[l++]);
    if (r & 1) fn(nodes_[--r]);
    l >>= 1;
    r >>= 1;
  }
}

std::array<std::uint64_t, kMaxPayloads> WeightedGrid::sum(std::uint32_t x1, std::uint32_t x2,
                                                          std::uint32_t y1,
                                                          std::uint32_t y2) const {
  std::array<std::uint64_t, kMaxPayloads> out{};
  if (x1 > x2 || y1 > y2) return out;
  check_rect(x1, x2, y1, y2);
  visit_cover(x1, x2, [&](const Node& n) {
    auto lo = std::lower_bound(n.ys.begin(), n.ys.end(), y1) - n.ys.begin();
    auto hi = std::upper_bound(n.ys.begin(), n.ys.end(), y2) - n.ys.begin();
    for (unsigned c = 0; c < payloads_; ++c)
      out[c] += n.pre[hi * payloads_ + c] - n.pre[lo * payloads_ + c];
  });
  return out;
}

void WeightedGrid::report(std::uint32_t x1, std::uint32_t x2, std::uint32_t y1, std::uint32_t y2,
                          const std::function<void(std::uint32_t)>& fn) const {
  if (x1 > x2 || y1 > y2) return;
  check_rect(x1, x2, y1, y2);
  visit_cover(x1, x2, [&](const Node& n) {
    auto lo = std::lower_bound(n.ys.begin(), n.ys.end(), y1) - n.ys.begin();
    auto hi = std::upper_bound(n.ys.begin(), n.ys.end(), y2) - n.ys.begin();
    for (auto i = lo; i < hi; ++i) fn(n.ids[i]);
  });
}

}  // namespace rlxi

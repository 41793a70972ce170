#include "didx/grid.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace didx {

namespace {

std::uint8_t axis_char(const AxisKey& k, std::uint64_t i, const Extractor& ex) {
  return ex.char_at(k.sym, k.rev ? k.start + k.len - 1 - i : k.start + i);
}

Fingerprint axis_fp(const AxisKey& k, std::uint64_t p, const Extractor& ex) {
  return k.rev ? ex.fingerprint_range(k.sym, k.start + k.len - p, p, true)
               : ex.fingerprint_range(k.sym, k.start, p, false);
}

std::uint64_t axis_lcp(const AxisKey& a, const AxisKey& b, const Extractor& ex) {
  std::uint64_t lo = 0, hi = std::min(a.len, b.len);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (axis_fp(a, mid, ex) == axis_fp(b, mid, ex))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// -1/0/+1 for key vs plain query string, over min(len, |q|) chars, with the
// shorter string ranked first on ties
int cmp_key_string(const AxisKey& k, std::string_view q, const Extractor& ex) {
  const std::uint64_t l = std::min<std::uint64_t>(k.len, q.size());
  const std::string s = axis_prefix(k, l, ex);
  const int c = std::memcmp(s.data(), q.data(), static_cast<std::size_t>(l));
  if (c != 0) return c < 0 ? -1 : 1;
  if (k.len < q.size()) return -1;
  return 0;  // q is a prefix of the axis string
}

}  // namespace

std::string axis_prefix(const AxisKey& k, std::uint64_t l, const Extractor& ex) {
  l = std::min(l, k.len);
  std::string out;
  out.reserve(l);
  if (k.rev) {
    ex.extract_range(k.sym, k.start + k.len - l, l, out);
    std::reverse(out.begin(), out.end());
  } else {
    ex.extract_range(k.sym, k.start, l, out);
  }
  return out;
}

int compare_axis_keys(const AxisKey& a, const AxisKey& b, const Extractor& ex) {
  const std::uint64_t p = axis_lcp(a, b, ex);
  if (p < std::min(a.len, b.len)) {
    const std::uint8_t ca = axis_char(a, p, ex), cb = axis_char(b, p, ex);
    return ca < cb ? -1 : 1;
  }
  if (a.len != b.len) return a.len < b.len ? -1 : 1;
  return 0;
}

void WaveletGrid::build(const std::vector<std::uint32_t>& vals,
                        const std::vector<std::uint64_t>& weights, std::uint32_t val_count) {
  size_ = static_cast<std::uint32_t>(vals.size());
  levels_ = 0;
  while ((1ull << levels_) < std::max<std::uint32_t>(val_count, 1)) ++levels_;
  rank0_.assign(levels_, {});
  wzero_.assign(levels_, {});
  ids_.assign(levels_ + 1, {});

  wall_.assign(size_ + 1, 0);
  for (std::uint32_t i = 0; i < size_; ++i) wall_[i + 1] = wall_[i] + weights[i];

  std::vector<std::uint32_t> v = vals, v2(size_);
  std::vector<std::uint32_t> id(size_), id2(size_);
  std::vector<std::uint64_t> w = weights, w2(size_);
  std::iota(id.begin(), id.end(), 0u);

  for (std::uint32_t l = 0; l < levels_; ++l) {
    ids_[l] = id;
    auto& r0 = rank0_[l];
    auto& wz = wzero_[l];
    r0.assign(size_ + 1, 0);
    wz.assign(size_ + 1, 0);
    const std::uint32_t shift = levels_ - 1 - l;
    for (std::uint32_t i = 0; i < size_; ++i) {
      const bool one = (v[i] >> shift) & 1u;
      r0[i + 1] = r0[i] + (one ? 0 : 1);
      wz[i + 1] = wz[i] + (one ? 0 : w[i]);
    }
    // stable partition: zeros first, ones after
    std::uint32_t z = r0[size_], p0 = 0, p1 = z;
    for (std::uint32_t i = 0; i < size_; ++i) {
      const std::uint32_t dst = ((v[i] >> shift) & 1u) ? p1++ : p0++;
      v2[dst] = v[i];
      id2[dst] = id[i];
      w2[dst] = w[i];
    }
    v.swap(v2);
    id.swap(id2);
    w.swap(w2);
  }
  ids_[levels_] = id;
}

std::uint64_t WaveletGrid::sum_less(std::uint32_t plo, std::uint32_t phi,
                                    std::uint64_t v) const {
  if (size_ == 0 || plo >= phi || v == 0) return 0;
  if (v >= (1ull << levels_)) return wall_[phi] - wall_[plo];
  std::uint64_t acc = 0;
  std::uint32_t lo = plo, hi = phi;
  for (std::uint32_t l = 0; l < levels_ && lo < hi; ++l) {
    const auto& r0 = rank0_[l];
    const auto& wz = wzero_[l];
    const std::uint32_t z = r0[size_];
    if ((v >> (levels_ - 1 - l)) & 1u) {
      acc += wz[hi] - wz[lo];
      lo = z + (lo - r0[lo]);
      hi = z + (hi - r0[hi]);
    } else {
      lo = r0[lo];
      hi = r0[hi];
    }
  }
  return acc;
}

std::uint64_t WaveletGrid::weight_sum(std::uint32_t plo, std::uint32_t phi,
                                      std::uint32_t vlo, std::uint32_t vhi) const {
  if (vhi <= vlo) return 0;
  return sum_less(plo, phi, vhi) - sum_less(plo, phi, vlo);
}

void WaveletGrid::rec_report(std::uint32_t level, std::uint32_t lo, std::uint32_t hi,
                             std::uint64_t a, std::uint64_t b, std::uint32_t vlo,
                             std::uint32_t vhi, std::vector<std::uint32_t>& out) const {
  if (lo >= hi || b <= vlo || a >= vhi) return;
  if (vlo <= a && b <= vhi) {
    const auto& id = ids_[level];
    out.insert(out.end(), id.begin() + lo, id.begin() + hi);
    return;
  }
  const auto& r0 = rank0_[level];
  const std::uint32_t z = r0[size_];
  const std::uint64_t mid = a + (b - a) / 2;
  rec_report(level + 1, r0[lo], r0[hi], a, mid, vlo, vhi, out);
  rec_report(level + 1, z + (lo - r0[lo]), z + (hi - r0[hi]), mid, b, vlo, vhi, out);
}

void WaveletGrid::report(std::uint32_t plo, std::uint32_t phi, std::uint32_t vlo,
                         std::uint32_t vhi, std::vector<std::uint32_t>& out) const {
  if (size_ == 0 || plo >= phi || vlo >= vhi) return;
  rec_report(0, plo, phi, 0, 1ull << levels_, vlo, vhi, out);
}

void Grid::finalize() {
  const std::uint32_t p = static_cast<std::uint32_t>(points.size());
  x_pos_.assign(x_axis.size() + 1, 0);
  for (const GridPoint& pt : points) ++x_pos_[pt.x_rank + 1];
  for (std::size_t i = 1; i < x_pos_.size(); ++i) x_pos_[i] += x_pos_[i - 1];

  std::vector<std::uint32_t> vals(p);
  std::vector<std::uint64_t> w(p);
  run_points_.clear();
  for (std::uint32_t i = 0; i < p; ++i) {
    vals[i] = points[i].y_rank;
    w[i] = points[i].kind == Rule::Kind::Block ? points[i].weight : 0;
    if (points[i].kind == Rule::Kind::Run) run_points_.push_back(i);
  }
  wt_.build(vals, w, static_cast<std::uint32_t>(y_axis.size()));
}

RankRange Grid::prefix_range_x(std::string_view q, const Extractor& ex) const {
  auto lo = std::partition_point(x_axis.begin(), x_axis.end(), [&](const AxisKey& k) {
    return cmp_key_string(k, q, ex) < 0;
  });
  auto hi = std::partition_point(lo, x_axis.end(), [&](const AxisKey& k) {
    return cmp_key_string(k, q, ex) <= 0;
  });
  return {static_cast<std::uint32_t>(lo - x_axis.begin()),
          static_cast<std::uint32_t>(hi - x_axis.begin())};
}

RankRange Grid::prefix_range_y(std::string_view q, const Extractor& ex) const {
  auto lo = std::partition_point(y_axis.begin(), y_axis.end(), [&](const AxisKey& k) {
    return cmp_key_string(k, q, ex) < 0;
  });
  auto hi = std::partition_point(lo, y_axis.end(), [&](const AxisKey& k) {
    return cmp_key_string(k, q, ex) <= 0;
  });
  return {static_cast<std::uint32_t>(lo - y_axis.begin()),
          static_cast<std::uint32_t>(hi - y_axis.begin())};
}

std::vector<std::uint32_t> Grid::range_report(RankRange xr, RankRange yr) const {
  std::vector<std::uint32_t> out;
  if (xr.first >= xr.second || yr.first >= yr.second) return out;
  wt_.report(x_pos_[xr.first], x_pos_[xr.second], yr.first, yr.second, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Grid::range_weight_sum(RankRange xr, RankRange yr) const {
  if (xr.first >= xr.second || yr.first >= yr.second) return 0;
  return wt_.weight_sum(x_pos_[xr.first], x_pos_[xr.second], yr.first, yr.second);
}

std::vector<std::uint32_t> Grid::runs_in_range(RankRange xr, RankRange yr) const {
  std::vector<std::uint32_t> out;
  if (xr.first >= xr.second || yr.first >= yr.second) return out;
  // run_points_ follows point order, so x_rank is nondecreasing along it
  auto lo = std::lower_bound(run_points_.begin(), run_points_.end(), xr.first,
                             [&](std::uint32_t i, std::uint32_t x) { return points[i].x_rank < x; });
  for (auto it = lo; it != run_points_.end() && points[*it].x_rank < xr.second; ++it)
    if (points[*it].y_rank >= yr.first && points[*it].y_rank < yr.second) out.push_back(*it);
  return out;
}

Grid build_grid(const Rlslp& g, const WeightTable& weights, const Extractor& ex) {
  Grid grid;
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    const SymbolId id = g.sigma + static_cast<SymbolId>(i);
    if (weights[id] == 0) continue;  // unreachable rule, no occurrences
    const Rule& r = g.rules[i];
    if (r.kind == Rule::Kind::Block) {
      std::uint64_t off = 0;
      for (std::size_t c = 0; c + 1 < r.children.size(); ++c) {
        off += g.exp_len[r.children[c]];
        GridPoint pt;
        pt.parent = id;
        pt.child_index = static_cast<std::uint32_t>(c);
        pt.border = off;
        pt.kind = Rule::Kind::Block;
        pt.weight = weights[id];
        grid.points.push_back(pt);
      }
    } else {
      GridPoint pt;
      pt.parent = id;
      pt.child_index = 0;
      pt.border = g.exp_len[r.base];
      pt.kind = Rule::Kind::Run;
      pt.weight = weights[id];
      pt.run_count = r.count;
      pt.base_len = g.exp_len[r.base];
      grid.points.push_back(pt);
    }
  }

  // axis keys per point: x = reversed expansion of the left child, y = the
  // remainder of exp(parent) past the border
  auto x_key = [&](const GridPoint& pt) -> AxisKey {
    SymbolId left = pt.kind == Rule::Kind::Run ? g.rule(pt.parent).base
                                               : g.rule(pt.parent).children[pt.child_index];
    return {pt.parent, pt.border - g.exp_len[left], g.exp_len[left], true};
  };
  auto y_key = [&](const GridPoint& pt) -> AxisKey {
    return {pt.parent, pt.border, g.exp_len[pt.parent] - pt.border, false};
  };

  auto rank_axis = [&](auto key_of, std::vector<AxisKey>& axis, bool assign_x) {
    std::vector<std::uint32_t> order(grid.points.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const int c = compare_axis_keys(key_of(grid.points[a]), key_of(grid.points[b]), ex);
      if (c != 0) return c < 0;
      return a < b;
    });
    axis.clear();
    std::uint32_t rank = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const AxisKey k = key_of(grid.points[order[i]]);
      if (axis.empty() || compare_axis_keys(axis.back(), k, ex) != 0) {
        axis.push_back(k);
        rank = static_cast<std::uint32_t>(axis.size() - 1);
      }
      (assign_x ? grid.points[order[i]].x_rank : grid.points[order[i]].y_rank) = rank;
    }
  };
  rank_axis(x_key, grid.x_axis, true);
  rank_axis(y_key, grid.y_axis, false);

  std::sort(grid.points.begin(), grid.points.end(), [](const GridPoint& a, const GridPoint& b) {
    if (a.x_rank != b.x_rank) return a.x_rank < b.x_rank;
    if (a.y_rank != b.y_rank) return a.y_rank < b.y_rank;
    return a.parent < b.parent;
  });
  grid.finalize();
  return grid;
}

}  // namespace didx

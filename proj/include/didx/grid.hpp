#ifndef DIDX_GRID_HPP
#define DIDX_GRID_HPP

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "didx/extraction.hpp"
#include "didx/grammar_tree.hpp"
#include "didx/rlslp.hpp"

namespace didx {

// Handle for an axis string: a substring of exp(sym), optionally reversed.
// Axis strings are never materialized; chars come from the extractor.
struct AxisKey {
  SymbolId sym = kInvalidSymbol;
  std::uint64_t start = 0;
  std::uint64_t len = 0;
  bool rev = false;

  bool operator==(const AxisKey&) const = default;
};

// One point per border between consecutive children of a block rule and one
// per run rule (the border after the first copy).
struct GridPoint {
  SymbolId parent = kInvalidSymbol;
  std::uint32_t child_index = 0;  // 0-based index of the left child
  std::uint64_t border = 0;       // offset of the border within exp(parent)
  Rule::Kind kind = Rule::Kind::Block;
  std::uint64_t weight = 0;       // w(parent)
  std::uint64_t run_count = 0;    // Run points: s
  std::uint64_t base_len = 0;     // Run points: |exp(A_1)|
  std::uint32_t x_rank = 0, y_rank = 0;

  bool operator==(const GridPoint&) const = default;
};

// Wavelet decomposition of y ranks in x order; serves range reporting and
// weighted range sums over the same bit hierarchy.
class WaveletGrid {
 public:
  void build(const std::vector<std::uint32_t>& vals, const std::vector<std::uint64_t>& weights,
             std::uint32_t val_count);

  // point positions (level-0 indices) with position in [plo,phi) and value in [vlo,vhi)
  void report(std::uint32_t plo, std::uint32_t phi, std::uint32_t vlo, std::uint32_t vhi,
              std::vector<std::uint32_t>& out) const;

  std::uint64_t weight_sum(std::uint32_t plo, std::uint32_t phi, std::uint32_t vlo,
                           std::uint32_t vhi) const;

  std::uint32_t size() const { return size_; }

 private:
  std::uint32_t size_ = 0;
  std::uint32_t levels_ = 0;
  std::vector<std::vector<std::uint32_t>> rank0_;  // per level, prefix zero counts
  std::vector<std::vector<std::uint64_t>> wzero_;  // per level, prefix zero-branch weights
  std::vector<std::uint64_t> wall_;                // prefix weights in level-0 order
  std::vector<std::vector<std::uint32_t>> ids_;    // per level, element ids in arrangement

  std::uint64_t sum_less(std::uint32_t plo, std::uint32_t phi, std::uint64_t v) const;
  void rec_report(std::uint32_t level, std::uint32_t lo, std::uint32_t hi, std::uint64_t a,
                  std::uint64_t b, std::uint32_t vlo, std::uint32_t vhi,
                  std::vector<std::uint32_t>& out) const;
};

using RankRange = std::pair<std::uint32_t, std::uint32_t>;  // [lo, hi)

class Grid {
 public:
  std::vector<GridPoint> points;   // sorted by (x_rank, y_rank)
  std::vector<AxisKey> x_axis, y_axis;  // sorted distinct axis strings

  // maximal rank interval of axis strings with Q as a prefix; Q is given in
  // axis orientation (reverse the left piece before calling for x)
  RankRange prefix_range_x(std::string_view q, const Extractor& ex) const;
  RankRange prefix_range_y(std::string_view q, const Extractor& ex) const;

  // indices into `points` inside the rectangle, all kinds
  std::vector<std::uint32_t> range_report(RankRange xr, RankRange yr) const;

  // weight total of Block points inside the rectangle
  std::uint64_t range_weight_sum(RankRange xr, RankRange yr) const;

  // indices of Run points inside the rectangle (enumerated, small)
  std::vector<std::uint32_t> runs_in_range(RankRange xr, RankRange yr) const;

  // rebuildable query structures; called by build_grid and after load
  void finalize();

 private:
  WaveletGrid wt_;
  std::vector<std::uint32_t> x_pos_;     // first point position per x rank, + end sentinel
  std::vector<std::uint32_t> run_points_;  // Run point indices in point order
};

Grid build_grid(const Rlslp& g, const WeightTable& weights, const Extractor& ex);

// three-way comparison of axis strings, fingerprint-accelerated
int compare_axis_keys(const AxisKey& a, const AxisKey& b, const Extractor& ex);

std::string axis_prefix(const AxisKey& k, std::uint64_t l, const Extractor& ex);

}  // namespace didx

#endif

#pragma once

#include <cstdint>
#include <vector>

#include "skewdim/skew_system.hpp"

namespace skewdim {

/// Depth-p band of the attractor: for each grid node x the fiber slice is
/// [y_lo(x), y_lo(x) + height] with height = lambda^p. Between nodes the
/// stored band is the linear interpolant of the true curve.
struct Band {
  Word word;
  double x_lo = 0.0, x_hi = 1.0;
  std::vector<double> y_lo;
  double height = 1.0;

  [[nodiscard]] std::size_t grid_size() const { return y_lo.size(); }
  [[nodiscard]] double node_x(std::size_t i) const {
    if (i + 1 == y_lo.size()) return x_hi;
    return x_lo + (x_hi - x_lo) * (static_cast<double>(i) / static_cast<double>(y_lo.size() - 1));
  }
  [[nodiscard]] double y_lo_at(double x) const;
  [[nodiscard]] Interval fiber_at(double x) const {
    double lo = y_lo_at(x);
    return Interval{lo, lo + height};
  }
};

struct AttractorCover {
  SkewSystem system;
  int depth = 0;
  int grid_size = 0;
  std::vector<Band> bands;  // word-lexicographic order
};

/// Samples the band of w on a uniform grid of grid_size nodes over [a, b].
[[nodiscard]] Band build_band(const SkewSystem& sys, const Word& w, int grid_size);

/// All 2^depth bands in word-lexicographic order. depth is capped at 20.
/// Requires a system that passes validation.
[[nodiscard]] AttractorCover build_cover(const SkewSystem& sys, int depth, int grid_size,
                                         int threads = 0);

/// True when every depth-(q+1) band sits inside its depth-q parent at
/// every grid node, for all q < depth, within tol.
[[nodiscard]] bool check_nesting(const SkewSystem& sys, int depth, int grid_size,
                                 double tol = 1e-10);

struct DisjointReport {
  bool disjoint = false;
  double min_gap = 0.0;  // smallest vertical gap between adjacent bands
};

/// Pairwise disjointness of the depth-level bands at every grid node.
/// Bands at one depth share their height, so sorting fiber slices by lo
/// and checking adjacent gaps covers all pairs.
[[nodiscard]] DisjointReport check_disjoint(const SkewSystem& sys, int depth, int grid_size);

/// Midpoint of the band of w through x; the canonical representative the
/// factor maps and measure pushforwards act on.
[[nodiscard]] double band_center(const SkewSystem& sys, double x, const Word& w);

enum class FactorDirection { upper_to_exact, exact_to_lower };

struct FactorPair {
  double y_source = 0.0;
  double y_target = 0.0;
};

/// Fiberwise factor map sample: band centers of the same word w at the
/// same base point x, in the source and target systems. The systems must
/// share base and lambda so their codings correspond.
[[nodiscard]] FactorPair factor_point(const SkewSystem& source, const SkewSystem& target,
                                      double x, const Word& w);
[[nodiscard]] FactorPair factor_point(const SkewSystem& exact_sys, FactorDirection dir,
                                      double x, const Word& w);

struct LipschitzReport {
  double max_ratio = 0.0;
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;  // source separation below 1e-14
};

/// Monte Carlo audit of the fiberwise 1-Lipschitz property of a factor
/// map: ratio |y_target - y_target'| / |y_source - y_source'| over random
/// (x, w, w') with w != w' at the given depth.
[[nodiscard]] LipschitzReport lipschitz_audit(const SkewSystem& source, const SkewSystem& target,
                                              int depth, std::uint64_t n_pairs, std::uint64_t seed);
[[nodiscard]] LipschitzReport lipschitz_audit(const SkewSystem& exact_sys, FactorDirection dir,
                                              int depth, std::uint64_t n_pairs, std::uint64_t seed);

}  // namespace skewdim

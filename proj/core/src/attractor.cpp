#include "skewdim/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewdim/util.hpp"

namespace skewdim {

double Band::y_lo_at(double x) const {
  double span = x_hi - x_lo;
  double slack = 1e-9 * std::max(1.0, span);
  if (x < x_lo - slack || x > x_hi + slack) throw std::domain_error("x outside band domain");
  x = std::min(std::max(x, x_lo), x_hi);
  std::size_t n = y_lo.size();
  double t = (x - x_lo) / span * static_cast<double>(n - 1);
  std::size_t i = std::min(static_cast<std::size_t>(t), n - 2);
  double frac = t - static_cast<double>(i);
  return y_lo[i] + frac * (y_lo[i + 1] - y_lo[i]);
}

Band build_band(const SkewSystem& sys, const Word& w, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("band grid needs at least 2 nodes");
  Band band;
  band.word = w;
  band.x_lo = sys.base().a();
  band.x_hi = sys.base().b();
  band.height = lambda_power(sys.lambda(), static_cast<int>(w.size()));
  band.y_lo.resize(static_cast<std::size_t>(grid_size));
  for (std::size_t i = 0; i < band.y_lo.size(); ++i)
    band.y_lo[i] = fiber_series(sys, band.node_x(i), w).lo;
  return band;
}

AttractorCover build_cover(const SkewSystem& sys, int depth, int grid_size, int threads) {
  if (depth < 0) throw std::invalid_argument("cover depth must be nonnegative");
  if (depth > 20) throw cap_exceeded("cover depth exceeds the cap of 20");
  if (grid_size < 2) throw std::invalid_argument("cover grid needs at least 2 nodes");
  require_valid(sys);
  AttractorCover cover{sys, depth, grid_size, {}};
  std::uint64_t count = std::uint64_t{1} << depth;
  cover.bands.resize(count);
  parallel_for_chunks(count, threads, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t k = begin; k < end; ++k)
      cover.bands[k] = build_band(sys, Word::from_index(k, depth), grid_size);
  });
  return cover;
}

bool check_nesting(const SkewSystem& sys, int depth, int grid_size, double tol) {
  if (depth < 1) throw std::invalid_argument("nesting check needs depth >= 1");
  if (depth > 20) throw cap_exceeded("cover depth exceeds the cap of 20");
  AttractorCover parents = build_cover(sys, 0, grid_size);
  for (int q = 1; q <= depth; ++q) {
    AttractorCover children = build_cover(sys, q, grid_size);
    for (std::size_t k = 0; k < children.bands.size(); ++k) {
      const Band& child = children.bands[k];
      const Band& parent = parents.bands[k >> 1];  // lex order: child k extends parent k/2
      for (std::size_t i = 0; i < child.y_lo.size(); ++i) {
        if (child.y_lo[i] < parent.y_lo[i] - tol) return false;
        if (child.y_lo[i] + child.height > parent.y_lo[i] + parent.height + tol) return false;
      }
    }
    parents = std::move(children);
  }
  return true;
}

DisjointReport check_disjoint(const SkewSystem& sys, int depth, int grid_size) {
  if (depth < 1) throw std::invalid_argument("disjointness check needs depth >= 1");
  if (depth > 14) throw cap_exceeded("disjointness depth exceeds the cap of 14");
  AttractorCover cover = build_cover(sys, depth, grid_size);
  DisjointReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  std::vector<double> slice(cover.bands.size());
  double height = cover.bands.front().height;
  for (int i = 0; i < grid_size; ++i) {
    for (std::size_t k = 0; k < cover.bands.size(); ++k)
      slice[k] = cover.bands[k].y_lo[static_cast<std::size_t>(i)];
    std::sort(slice.begin(), slice.end());
    for (std::size_t k = 1; k < slice.size(); ++k)
      report.min_gap = std::min(report.min_gap, slice[k] - slice[k - 1] - height);
  }
  report.disjoint = report.min_gap > 0.0;
  return report;
}

double band_center(const SkewSystem& sys, double x, const Word& w) {
  return fiber_series(sys, x, w).midpoint();
}

namespace {

void require_compatible(const SkewSystem& u, const SkewSystem& v) {
  const IntervalMap& bu = u.base();
  const IntervalMap& bv = v.base();
  if (bu.a() != bv.a() || bu.b() != bv.b() || bu.c() != bv.c() || bu.d() != bv.d() ||
      u.lambda() != v.lambda())
    throw std::invalid_argument("factor maps need systems sharing base geometry and lambda");
}

}  // namespace

FactorPair factor_point(const SkewSystem& source, const SkewSystem& target, double x, const Word& w) {
  require_compatible(source, target);
  return FactorPair{band_center(source, x, w), band_center(target, x, w)};
}

FactorPair factor_point(const SkewSystem& exact_sys, FactorDirection dir, double x, const Word& w) {
  if (dir == FactorDirection::upper_to_exact)
    return factor_point(derive_upper(exact_sys), exact_sys, x, w);
  return factor_point(exact_sys, derive_lower(exact_sys), x, w);
}

LipschitzReport lipschitz_audit(const SkewSystem& source, const SkewSystem& target, int depth,
                                std::uint64_t n_pairs, std::uint64_t seed) {
  if (depth < 1) throw std::invalid_argument("audit depth must be positive");
  if (depth > 62) throw std::invalid_argument("audit depth out of range");
  require_compatible(source, target);
  require_valid(source);
  require_valid(target);
  const IntervalMap& base = source.base();
  LipschitzReport report;
  for (std::uint64_t i = 0; i < n_pairs; ++i) {
    std::mt19937_64 eng(substream_seed(seed, i));
    double x = uniform_in(eng, base.a(), base.b());
    auto draw_word = [&eng, depth] {
      Word w;
      for (int k = 0; k < depth; ++k) w.push_back(u01(eng) < 0.5 ? 1 : 2);
      return w;
    };
    Word w = draw_word();
    Word w2 = draw_word();
    while (w2 == w) w2 = draw_word();
    FactorPair p1 = factor_point(source, target, x, w);
    FactorPair p2 = factor_point(source, target, x, w2);
    double denom = std::abs(p1.y_source - p2.y_source);
    if (denom < 1e-14) {
      ++report.skipped;
      continue;
    }
    report.max_ratio = std::max(report.max_ratio, std::abs(p1.y_target - p2.y_target) / denom);
    ++report.evaluated;
  }
  return report;
}

LipschitzReport lipschitz_audit(const SkewSystem& exact_sys, FactorDirection dir, int depth,
                                std::uint64_t n_pairs, std::uint64_t seed) {
  if (dir == FactorDirection::upper_to_exact)
    return lipschitz_audit(derive_upper(exact_sys), exact_sys, depth, n_pairs, seed);
  return lipschitz_audit(exact_sys, derive_lower(exact_sys), depth, n_pairs, seed);
}

}  // namespace skewdim

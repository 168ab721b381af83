#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "skewdim/attractor.hpp"

namespace skewdim {

struct Rect {
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
};

[[nodiscard]] Rect domain_rect(const SkewSystem& sys);

/// Sparse occupancy grid of half-open epsilon-boxes anchored at the
/// domain's lower-left corner. Points on the top or right domain edge
/// fall into the last box, so the closed square is covered.
class BoxGrid {
public:
  BoxGrid(double epsilon, Rect domain);

  void insert(double x, double y);
  [[nodiscard]] std::uint64_t count() const;
  [[nodiscard]] std::uint64_t columns() const { return nx_; }
  [[nodiscard]] std::uint64_t rows() const { return ny_; }

  /// Packed (column, row) key of the box holding (x, y); the same
  /// convention insert uses, exposed so histograms can share it.
  [[nodiscard]] std::uint64_t key_of(double x, double y) const;

private:
  double epsilon_;
  Rect domain_;
  std::uint64_t nx_, ny_;
  mutable std::vector<std::uint64_t> keys_;  // deduplicated on count()
};

/// Number of epsilon-boxes hit by the sample set.
[[nodiscard]] std::uint64_t box_count_points(std::span<const Point> points, double epsilon,
                                             Rect domain);

/// Number of epsilon-boxes meeting the union of cover bands, computed
/// exactly from the stored piecewise-linear band extents, streamed per
/// column so no box set is materialized. epsilon must be at least
/// 1e-3 times the band height; far below that the bands no longer
/// resolve the set they cover.
[[nodiscard]] std::uint64_t box_count_bands(const AttractorCover& cover, double epsilon,
                                            int threads = 0);

struct DimensionFit {
  std::vector<double> scales;
  std::vector<double> counts;
  double slope = 0.0;      // the box-dimension estimate
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line through (log 1/eps, log N(eps)).
[[nodiscard]] DimensionFit fit_dimension(std::span<const double> scales,
                                         std::span<const double> counts);

struct undersampled_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Slope of log mu(B(center, r)) against log r over the given radii
/// (strictly decreasing), with mu the empirical measure of the samples.
/// Throws undersampled_error when the smallest ball holds fewer than
/// min_ball samples.
[[nodiscard]] double local_dimension(std::span<const Point> samples, Point center,
                                     std::span<const double> radii, std::size_t min_ball = 50);

struct MeasureDimensionReport {
  double median = 0.0;
  double iqr = 0.0;
  std::uint64_t centers_used = 0;
  std::uint64_t centers_skipped = 0;
};

/// Local dimension at n_centers sample points drawn from the samples
/// themselves (so centers are mu-typical), summarized by median and IQR.
/// Undersampled centers are skipped and counted.
[[nodiscard]] MeasureDimensionReport measure_dimension(std::span<const Point> samples,
                                                       std::size_t n_centers,
                                                       std::span<const double> radii,
                                                       std::uint64_t seed, int threads = 0);

}  // namespace skewdim

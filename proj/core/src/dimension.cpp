#include "skewdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "skewdim/util.hpp"

namespace skewdim {

Rect domain_rect(const SkewSystem& sys) {
  return Rect{sys.base().a(), sys.base().b(), 0.0, 1.0};
}

namespace {

std::uint64_t grid_extent(double lo, double hi, double epsilon) {
  double n = std::ceil((hi - lo) / epsilon - 1e-12);
  return n < 1.0 ? 1 : static_cast<std::uint64_t>(n);
}

/// Box row/column of a coordinate; the top edge closes into the last box.
std::uint64_t grid_index(double v, double lo, double epsilon, std::uint64_t n) {
  double t = (v - lo) / epsilon;
  if (t <= 0.0) return 0;
  std::uint64_t i = static_cast<std::uint64_t>(t);
  return i >= n ? n - 1 : i;
}

}  // namespace

BoxGrid::BoxGrid(double epsilon, Rect domain) : epsilon_(epsilon), domain_(domain) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(domain.x_hi > domain.x_lo && domain.y_hi > domain.y_lo))
    throw std::invalid_argument("degenerate box-counting domain");
  nx_ = grid_extent(domain.x_lo, domain.x_hi, epsilon);
  ny_ = grid_extent(domain.y_lo, domain.y_hi, epsilon);
}

std::uint64_t BoxGrid::key_of(double x, double y) const {
  double slack = 1e-9 * std::max(1.0, std::max(domain_.x_hi - domain_.x_lo, domain_.y_hi - domain_.y_lo));
  if (x < domain_.x_lo - slack || x > domain_.x_hi + slack || y < domain_.y_lo - slack ||
      y > domain_.y_hi + slack)
    throw std::domain_error("point outside box-counting domain");
  std::uint64_t ix = grid_index(x, domain_.x_lo, epsilon_, nx_);
  std::uint64_t iy = grid_index(y, domain_.y_lo, epsilon_, ny_);
  return ix * ny_ + iy;
}

void BoxGrid::insert(double x, double y) { keys_.push_back(key_of(x, y)); }

std::uint64_t BoxGrid::count() const {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  return keys_.size();
}

std::uint64_t box_count_points(std::span<const Point> points, double epsilon, Rect domain) {
  BoxGrid grid(epsilon, domain);
  for (const Point& p : points) grid.insert(p.x, p.y);
  return grid.count();
}

std::uint64_t box_count_bands(const AttractorCover& cover, double epsilon, int threads) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (cover.bands.empty()) return 0;
  double height = cover.bands.front().height;
  if (epsilon < 1e-3 * height)
    throw std::domain_error("epsilon far below band height: the cover does not resolve that scale");

  const double a = cover.bands.front().x_lo;
  const double b = cover.bands.front().x_hi;
  const std::uint64_t nx = grid_extent(a, b, epsilon);
  const std::uint64_t ny = grid_extent(0.0, 1.0, epsilon);
  const std::size_t n_bands = cover.bands.size();
  const std::size_t grid_n = cover.bands.front().y_lo.size();

  // Bands of one cover are vertically ordered and never cross, so one
  // sorting of band indices serves every column.
  std::vector<std::size_t> order(n_bands);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&cover](std::size_t u, std::size_t v) {
    return cover.bands[u].y_lo[0] < cover.bands[v].y_lo[0];
  });

  if (cover.system.fiber().is_constant()) {
    // Horizontal strips: every column hits the same set of rows.
    std::uint64_t rows = 0;
    std::int64_t watermark = -1;
    for (std::size_t k : order) {
      double lo = cover.bands[k].y_lo[0];
      std::int64_t u = static_cast<std::int64_t>(grid_index(lo, 0.0, epsilon, ny));
      std::int64_t v = static_cast<std::int64_t>(grid_index(lo + height, 0.0, epsilon, ny));
      std::int64_t from = std::max(u, watermark + 1);
      if (v >= from) {
        rows += static_cast<std::uint64_t>(v - from + 1);
        watermark = v;
      }
    }
    return nx * rows;
  }

  // One pass per column chunk. A band's extent over a column is the min
  // and max of its piecewise-linear graph there: the two column-edge
  // values plus any grid nodes strictly inside the column. Columns
  // partition the boxes by x-index, so chunk subtotals add up exactly.
  const double node_step = (b - a) / static_cast<double>(grid_n - 1);
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(resolve_threads(threads)), 0);
  parallel_for_chunks(nx, threads, [&](std::size_t col_begin, std::size_t col_end, int chunk) {
    if (col_begin >= col_end) return;
    // Node index and interpolation weight of an x position, shared by all
    // bands since they sample one grid.
    auto locate = [&](double x, std::size_t& i, double& frac) {
      double t = (x - a) / (b - a) * static_cast<double>(grid_n - 1);
      i = t <= 0.0 ? 0 : std::min(static_cast<std::size_t>(t), grid_n - 2);
      frac = std::min(std::max(t - static_cast<double>(i), 0.0), 1.0);
    };
    std::vector<double> left_vals(n_bands);
    double x_left = a + epsilon * static_cast<double>(col_begin);
    {
      std::size_t i0;
      double f0;
      locate(x_left, i0, f0);
      for (std::size_t k = 0; k < n_bands; ++k) {
        const std::vector<double>& ys = cover.bands[k].y_lo;
        left_vals[k] = ys[i0] + f0 * (ys[i0 + 1] - ys[i0]);
      }
    }
    // First grid node strictly to the right of the chunk's left edge.
    std::size_t next_node = static_cast<std::size_t>(
        std::max(0.0, std::floor((x_left - a) / node_step))) + 1;

    std::uint64_t total = 0;
    for (std::size_t j = col_begin; j < col_end; ++j) {
      double x_right = a + epsilon * static_cast<double>(j + 1);
      if (x_right > b) x_right = b;
      std::size_t n0 = next_node;
      while (next_node < grid_n && a + node_step * static_cast<double>(next_node) < x_right)
        ++next_node;
      std::size_t n1 = next_node;
      std::size_t ir;
      double fr;
      locate(x_right, ir, fr);

      std::int64_t watermark = -1;
      for (std::size_t k : order) {
        const std::vector<double>& ys = cover.bands[k].y_lo;
        double vr = ys[ir] + fr * (ys[ir + 1] - ys[ir]);
        double m = left_vals[k], M = left_vals[k];
        if (vr < m) m = vr;
        if (vr > M) M = vr;
        for (std::size_t nidx = n0; nidx < n1; ++nidx) {
          double yv = ys[nidx];
          if (yv < m) m = yv;
          if (yv > M) M = yv;
        }
        left_vals[k] = vr;
        std::int64_t u = static_cast<std::int64_t>(grid_index(m, 0.0, epsilon, ny));
        std::int64_t v = static_cast<std::int64_t>(grid_index(M + height, 0.0, epsilon, ny));
        std::int64_t from = std::max(u, watermark + 1);
        if (v >= from) {
          total += static_cast<std::uint64_t>(v - from + 1);
          watermark = v;
        }
      }
      x_left = x_right;
    }
    partial[static_cast<std::size_t>(chunk)] += total;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

DimensionFit fit_dimension(std::span<const double> scales, std::span<const double> counts) {
  if (scales.size() != counts.size()) throw std::invalid_argument("scales/counts size mismatch");
  if (scales.size() < 3) throw std::invalid_argument("dimension fit needs at least 3 scales");
  DimensionFit fit;
  fit.scales.assign(scales.begin(), scales.end());
  fit.counts.assign(counts.begin(), counts.end());
  std::size_t n = scales.size();
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(scales[i] > 0.0) || !(counts[i] > 0.0))
      throw std::invalid_argument("scales and counts must be positive");
    u[i] = -std::log(scales[i]);
    v[i] = std::log(counts[i]);
  }
  double mu = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(n);
  double mv = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  double suv = 0.0, suu = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suv += (u[i] - mu) * (v[i] - mv);
    suu += (u[i] - mu) * (u[i] - mu);
  }
  if (suu == 0.0) throw std::invalid_argument("dimension fit needs distinct scales");
  fit.slope = suv / suu;
  fit.intercept = mv - fit.slope * mu;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pred = fit.intercept + fit.slope * u[i];
    ss_res += (v[i] - pred) * (v[i] - pred);
    ss_tot += (v[i] - mv) * (v[i] - mv);
  }
  fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

double local_dimension(std::span<const Point> samples, Point center, std::span<const double> radii,
                       std::size_t min_ball) {
  if (radii.size() < 3) throw std::invalid_argument("local dimension needs at least 3 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw std::invalid_argument("radii must be strictly decreasing");
  }
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::vector<std::uint64_t> counts(radii.size(), 0);
  std::vector<double> r2(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) r2[i] = radii[i] * radii[i];
  for (const Point& p : samples) {
    double dx = p.x - center.x, dy = p.y - center.y;
    double d2 = dx * dx + dy * dy;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (d2 <= r2[i])
        ++counts[i];
      else
        break;  // radii decrease, so the rest cannot contain it either
    }
  }
  if (counts.back() < min_ball)
    throw undersampled_error("smallest ball holds " + std::to_string(counts.back()) +
                             " samples, need " + std::to_string(min_ball));
  double n = static_cast<double>(samples.size());
  std::vector<double> logr(radii.size()), logf(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    logr[i] = std::log(radii[i]);
    logf[i] = std::log(static_cast<double>(counts[i]) / n);
  }
  double mr = std::accumulate(logr.begin(), logr.end(), 0.0) / static_cast<double>(logr.size());
  double mf = std::accumulate(logf.begin(), logf.end(), 0.0) / static_cast<double>(logf.size());
  double srf = 0.0, srr = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    srf += (logr[i] - mr) * (logf[i] - mf);
    srr += (logr[i] - mr) * (logr[i] - mr);
  }
  return srf / srr;
}

namespace {

double interpolated_quantile(const std::vector<double>& sorted, double t) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  double h = t * static_cast<double>(sorted.size() - 1);
  std::size_t i = static_cast<std::size_t>(h);
  if (i + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace

MeasureDimensionReport measure_dimension(std::span<const Point> samples, std::size_t n_centers,
                                         std::span<const double> radii, std::uint64_t seed,
                                         int threads) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  if (n_centers == 0) throw std::invalid_argument("need at least one center");
  constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> slopes(n_centers, kUnset);
  parallel_for_chunks(n_centers, threads, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 eng(substream_seed(seed, i));
      std::size_t idx = static_cast<std::size_t>(eng() % samples.size());
      try {
        slopes[i] = local_dimension(samples, samples[idx], radii);
      } catch (const undersampled_error&) {
        // stays NaN; counted below
      }
    }
  });
  std::vector<double> used;
  used.reserve(n_centers);
  for (double s : slopes)
    if (!std::isnan(s)) used.push_back(s);
  MeasureDimensionReport report;
  report.centers_used = used.size();
  report.centers_skipped = n_centers - used.size();
  if (used.empty()) throw undersampled_error("every center was undersampled");
  std::sort(used.begin(), used.end());
  std::size_t m = used.size();
  report.median = m % 2 == 1 ? used[m / 2] : 0.5 * (used[m / 2 - 1] + used[m / 2]);
  report.iqr = interpolated_quantile(used, 0.75) - interpolated_quantile(used, 0.25);
  return report;
}

}  // namespace skewdim

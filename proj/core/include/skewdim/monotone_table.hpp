#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace skewdim {

/// Strictly monotone piecewise-linear function given by sample points.
/// xs is strictly increasing; ys is strictly increasing or strictly
/// decreasing. Evaluation clamps x to [xs.front(), xs.back()] after an
/// out-of-domain guard, so endpoint queries never fall off the table.
class MonotoneTable {
public:
  static MonotoneTable create(std::vector<std::pair<double, double>> samples);

  [[nodiscard]] bool increasing() const { return increasing_; }
  [[nodiscard]] std::size_t size() const { return xs_.size(); }
  [[nodiscard]] double x_min() const { return xs_.front(); }
  [[nodiscard]] double x_max() const { return xs_.back(); }
  [[nodiscard]] double y_at_x_min() const { return ys_.front(); }
  [[nodiscard]] double y_at_x_max() const { return ys_.back(); }
  [[nodiscard]] double y_min() const { return increasing_ ? ys_.front() : ys_.back(); }
  [[nodiscard]] double y_max() const { return increasing_ ? ys_.back() : ys_.front(); }
  [[nodiscard]] const std::vector<double>& xs() const { return xs_; }
  [[nodiscard]] const std::vector<double>& ys() const { return ys_; }

  [[nodiscard]] double eval(double x) const;

  /// Unique x with eval(x) == y, by bisection to 1e-13 absolute in x
  /// (tighter than the 1e-12 the callers rely on).
  [[nodiscard]] double inverse(double y) const;

private:
  std::vector<double> xs_, ys_;
  bool increasing_ = true;
};

inline MonotoneTable MonotoneTable::create(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("monotone table needs at least 2 samples");
  for (const auto& [x, y] : samples) {
    if (!std::isfinite(x) || !std::isfinite(y))
      throw std::invalid_argument("monotone table sample is not finite");
  }
  MonotoneTable t;
  t.xs_.reserve(samples.size());
  t.ys_.reserve(samples.size());
  for (const auto& [x, y] : samples) {
    t.xs_.push_back(x);
    t.ys_.push_back(y);
  }
  for (std::size_t i = 1; i < t.xs_.size(); ++i) {
    if (!(t.xs_[i] > t.xs_[i - 1]))
      throw std::invalid_argument("monotone table xs must be strictly increasing");
  }
  t.increasing_ = t.ys_.back() > t.ys_.front();
  for (std::size_t i = 1; i < t.ys_.size(); ++i) {
    bool up = t.ys_[i] > t.ys_[i - 1];
    if (up != t.increasing_)
      throw std::invalid_argument("monotone table ys must be strictly monotone");
  }
  return t;
}

inline double MonotoneTable::eval(double x) const {
  double span = xs_.back() - xs_.front();
  double slack = 1e-9 * std::max(1.0, std::abs(span));
  if (x < xs_.front() - slack || x > xs_.back() + slack)
    throw std::domain_error("monotone table eval outside domain");
  x = std::min(std::max(x, xs_.front()), xs_.back());
  // upper_bound never returns begin() because x >= xs_.front().
  auto it = std::upper_bound(xs_.begin() + 1, xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (i >= xs_.size() - 1) i = xs_.size() - 2;
  double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + t * (ys_[i + 1] - ys_[i]);
}

inline double MonotoneTable::inverse(double y) const {
  double lo = y_min(), hi = y_max();
  double slack = 1e-9 * std::max(1.0, hi - lo);
  if (y < lo - slack || y > hi + slack)
    throw std::domain_error("monotone table inverse outside range");
  y = std::min(std::max(y, lo), hi);
  double xa = xs_.front(), xb = xs_.back();
  for (int iter = 0; iter < 200 && xb - xa > 1e-13; ++iter) {
    double xm = 0.5 * (xa + xb);
    double ym = eval(xm);
    bool go_right = increasing_ ? (ym < y) : (ym > y);
    if (go_right)
      xa = xm;
    else
      xb = xm;
  }
  return 0.5 * (xa + xb);
}

}  // namespace skewdim

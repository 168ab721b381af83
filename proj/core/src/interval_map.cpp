#include "skewdim/interval_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skewdim {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " is not finite");
}

}  // namespace

Branch Branch::linear(double lo, double hi, double image_of_lo, double image_of_hi) {
  require_finite(lo, "branch lo");
  require_finite(hi, "branch hi");
  require_finite(image_of_lo, "branch image");
  require_finite(image_of_hi, "branch image");
  if (!(lo < hi)) throw std::invalid_argument("branch interval must have lo < hi");
  if (image_of_lo == image_of_hi) throw std::invalid_argument("branch must be strictly monotone");
  Branch br;
  br.kind_ = Kind::linear;
  br.lo_ = lo;
  br.hi_ = hi;
  br.image_lo_ = image_of_lo;
  br.image_hi_ = image_of_hi;
  return br;
}

Branch Branch::tabulated(std::vector<std::pair<double, double>> samples) {
  MonotoneTable table = MonotoneTable::create(std::move(samples));
  Branch br;
  br.kind_ = Kind::tabulated;
  br.lo_ = table.x_min();
  br.hi_ = table.x_max();
  br.image_lo_ = table.y_at_x_min();
  br.image_hi_ = table.y_at_x_max();
  br.table_ = std::move(table);
  return br;
}

double Branch::eval(double x) const {
  if (kind_ == Kind::tabulated) return table_->eval(x);
  double span = hi_ - lo_;
  double slack = 1e-9 * std::max(1.0, std::abs(span));
  if (x < lo_ - slack || x > hi_ + slack) throw std::domain_error("branch eval outside interval");
  x = std::min(std::max(x, lo_), hi_);
  double t = (x - lo_) / span;
  return image_lo_ + t * (image_hi_ - image_lo_);
}

double Branch::inverse(double y) const {
  if (kind_ == Kind::tabulated) return table_->inverse(y);
  double ylo = image_min(), yhi = image_max();
  double slack = 1e-9 * std::max(1.0, yhi - ylo);
  if (y < ylo - slack || y > yhi + slack) throw std::domain_error("branch inverse outside image");
  y = std::min(std::max(y, ylo), yhi);
  double t = (y - image_lo_) / (image_hi_ - image_lo_);
  return lo_ + t * (hi_ - lo_);
}

IntervalMap IntervalMap::create(double a, double b, double c, double d, Branch branch1, Branch branch2) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(c, "c");
  require_finite(d, "d");
  if (!(a < c && c < d && d < b)) throw std::invalid_argument("interval map needs a < c < d < b");
  double slack = 1e-9 * std::max(1.0, b - a);
  if (std::abs(branch1.lo() - a) > slack || std::abs(branch1.hi() - c) > slack)
    throw std::invalid_argument("branch 1 must be defined on [a, c]");
  if (std::abs(branch2.lo() - d) > slack || std::abs(branch2.hi() - b) > slack)
    throw std::invalid_argument("branch 2 must be defined on [d, b]");
  IntervalMap map;
  map.a_ = a;
  map.b_ = b;
  map.c_ = c;
  map.d_ = d;
  map.branches_.push_back(std::move(branch1));
  map.branches_.push_back(std::move(branch2));
  return map;
}

const Branch& IntervalMap::branch(int i) const {
  if (i != 1 && i != 2) throw std::invalid_argument("branch index must be 1 or 2");
  return branches_[static_cast<std::size_t>(i - 1)];
}

int IntervalMap::branch_of(double x) const {
  if (x >= a_ && x <= c_) return 1;
  if (x >= d_ && x <= b_) return 2;
  return 0;
}

double IntervalMap::apply_T(double x) const {
  double slack = 1e-9 * std::max(1.0, b_ - a_);
  if (x < a_ - slack || x > b_ + slack) throw std::domain_error("point outside map domain");
  x = std::min(std::max(x, a_), b_);
  if (in_gap(x)) return a_;  // the gap is flushed to the left endpoint
  return x <= c_ ? branches_[0].eval(x) : branches_[1].eval(x);
}

std::vector<double> IntervalMap::backward_orbit(double x, const Word& w) const {
  double slack = 1e-9 * std::max(1.0, b_ - a_);
  if (x < a_ - slack || x > b_ + slack) throw std::domain_error("point outside map domain");
  x = std::min(std::max(x, a_), b_);
  std::vector<double> orbit;
  orbit.reserve(w.size());
  double cur = x;
  for (std::size_t k = 0; k < w.size(); ++k) {
    cur = branch_inverse(w.at(k), cur);
    orbit.push_back(cur);
  }
  return orbit;
}

CoupledExpandingReport verify_coupled_expanding(const IntervalMap& map) {
  CoupledExpandingReport report;
  report.gap = map.d() - map.c();
  for (int i = 1; i <= 2; ++i) {
    const Branch& br = map.branch(i);
    // An interval image covers V1 and V2 iff it reaches a on the left and
    // b on the right.
    double tol = 1e-9 * std::max(1.0, map.b() - map.a());
    if (br.image_min() > map.a() + tol) {
      report.witness = "branch " + std::to_string(i) + " image starts at " +
                       std::to_string(br.image_min()) + " and misses part of V1";
      return report;
    }
    if (br.image_max() < map.b() - tol) {
      report.witness = "branch " + std::to_string(i) + " image ends at " +
                       std::to_string(br.image_max()) + " and misses part of V2";
      return report;
    }
  }
  report.holds = true;
  return report;
}

double entropy_full_branch(const IntervalMap& map) {
  double tol = 1e-9 * std::max(1.0, map.b() - map.a());
  for (int i = 1; i <= 2; ++i) {
    const Branch& br = map.branch(i);
    if (std::abs(br.image_min() - map.a()) > tol || std::abs(br.image_max() - map.b()) > tol)
      throw std::invalid_argument("entropy formula requires full branches");
  }
  return std::log(2.0);
}

}  // namespace skewdim

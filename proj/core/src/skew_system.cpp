#include "skewdim/skew_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skewdim {

FiberProfile FiberProfile::exact(MonotoneTable phi) {
  FiberProfile f;
  f.kind_ = Kind::exact;
  f.phi_.push_back(std::move(phi));
  return f;
}

FiberProfile FiberProfile::upper_const(double q1, double q2) {
  if (!std::isfinite(q1) || !std::isfinite(q2))
    throw std::invalid_argument("fiber constants must be finite");
  FiberProfile f;
  f.kind_ = Kind::upper_const;
  f.c1_ = q1;
  f.c2_ = q2;
  return f;
}

FiberProfile FiberProfile::lower_const(double gamma1, double gamma2) {
  if (!std::isfinite(gamma1) || !std::isfinite(gamma2))
    throw std::invalid_argument("fiber constants must be finite");
  FiberProfile f;
  f.kind_ = Kind::lower_const;
  f.c1_ = gamma1;
  f.c2_ = gamma2;
  return f;
}

const MonotoneTable& FiberProfile::phi() const {
  if (kind_ != Kind::exact) throw std::logic_error("constant fiber profile has no phi table");
  return phi_.front();
}

double FiberProfile::constant(int branch) const {
  if (kind_ == Kind::exact) throw std::logic_error("exact fiber profile has no branch constants");
  if (branch != 1 && branch != 2) throw std::invalid_argument("branch index must be 1 or 2");
  return branch == 1 ? c1_ : c2_;
}

SkewSystem SkewSystem::create(IntervalMap base, FiberProfile fiber, double lambda) {
  if (!std::isfinite(lambda) || !(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("lambda must lie in (0, 1)");
  return SkewSystem(std::move(base), std::move(fiber), lambda);
}

double SkewSystem::fiber_value(double x) const {
  if (fiber_.kind() == FiberProfile::Kind::exact) return fiber_.phi().eval(x);
  int branch = base_.branch_of(x);
  if (branch == 0) throw gap_error(0);
  return fiber_.constant(branch);
}

double SkewSystem::fiber_value_at(double x, int symbol) const {
  if (fiber_.kind() == FiberProfile::Kind::exact) return fiber_.phi().eval(x);
  return fiber_.constant(symbol);
}

ValidationReport validate_system(const SkewSystem& sys) {
  ValidationReport report;
  const IntervalMap& base = sys.base();
  double lambda = sys.lambda();
  double tol = 1e-9;

  if (!(lambda > 0.0 && lambda < 0.5))
    report.violations.push_back("lambda must lie in (0, 1/2)");

  CoupledExpandingReport ce = verify_coupled_expanding(base);
  for (int i = 1; i <= 2; ++i) {
    const Branch& br = base.branch(i);
    double dtol = 1e-9 * std::max(1.0, base.b() - base.a());
    if (std::abs(br.image_min() - base.a()) > dtol || std::abs(br.image_max() - base.b()) > dtol)
      report.violations.push_back("branch " + std::to_string(i) + " is not onto [a, b]");
  }
  if (!ce.holds && report.violations.empty())
    report.violations.push_back("base map is not coupled-expanding: " + ce.witness.value_or(""));

  const FiberProfile& fiber = sys.fiber();
  double sep = 0.0;
  double range_lo = 0.0, range_hi = 0.0;
  if (fiber.kind() == FiberProfile::Kind::exact) {
    const MonotoneTable& phi = fiber.phi();
    double dtol = 1e-9 * std::max(1.0, base.b() - base.a());
    if (std::abs(phi.x_min() - base.a()) > dtol || std::abs(phi.x_max() - base.b()) > dtol)
      report.violations.push_back("phi must be defined on exactly [a, b]");
    range_lo = phi.y_min();
    range_hi = phi.y_max();
    double at_c = 0.0, at_d = 0.0;
    try {
      at_c = phi.eval(base.c());
      at_d = phi.eval(base.d());
      sep = std::abs(at_c - at_d);
    } catch (const std::domain_error&) {
      sep = 0.0;  // phi does not even reach the gap endpoints
    }
    if (!(sep > lambda))
      report.violations.push_back("fiber separation |phi(c) - phi(d)| must exceed lambda");
    if (lambda >= 1.0 / 3.0)
      report.warnings.push_back(
          "lambda >= 1/3: the admissible phi range is narrower than lambda, "
          "so the separation hypothesis cannot hold");
  } else {
    double c1 = fiber.constant(1), c2 = fiber.constant(2);
    range_lo = std::min(c1, c2);
    range_hi = std::max(c1, c2);
    sep = std::abs(c1 - c2);
    if (!(sep > lambda))
      report.violations.push_back("fiber separation |q1 - q2| must exceed lambda");
  }
  if (range_lo < 0.5 - tol || range_hi > 1.0 - 0.5 * lambda + tol)
    report.violations.push_back("fiber values must lie in [1/2, 1 - lambda/2]");

  return report;
}

void require_valid(const SkewSystem& sys) {
  ValidationReport report = validate_system(sys);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "system fails validation:";
  for (const auto& v : report.violations) msg << "\n  - " << v;
  throw std::invalid_argument(msg.str());
}

Point apply_F(const SkewSystem& sys, Point pt) {
  const IntervalMap& base = sys.base();
  double slack = 1e-9 * std::max(1.0, base.b() - base.a());
  if (pt.x < base.a() - slack || pt.x > base.b() + slack || pt.y < -1e-9 || pt.y > 1.0 + 1e-9)
    throw std::domain_error("point outside Q");
  double x = std::min(std::max(pt.x, base.a()), base.b());
  double y = std::min(std::max(pt.y, 0.0), 1.0);
  double fx = sys.fiber_value(x);
  return Point{base.apply_T(x), fx + sys.lambda() * (y - 0.5)};
}

Point apply_Fp_closed_form(const SkewSystem& sys, Point pt, int p) {
  if (p < 1) throw std::invalid_argument("iterate count must be positive");
  const IntervalMap& base = sys.base();
  double slack = 1e-9 * std::max(1.0, base.b() - base.a());
  if (pt.x < base.a() - slack || pt.x > base.b() + slack || pt.y < -1e-9 || pt.y > 1.0 + 1e-9)
    throw std::domain_error("point outside Q");
  double lambda = sys.lambda();

  // Forward orbit x, Tx, ..., T^{p-1}x; every visited point must miss the
  // gap or the symbolic description of the orbit breaks down.
  double x = std::min(std::max(pt.x, base.a()), base.b());
  double series = 0.0;  // Horner over sum_{k=1}^{p} lambda^{p-k} phi(T^{k-1} x)
  for (int k = 0; k < p; ++k) {
    if (base.in_gap(x)) throw gap_error(k);
    series = series * lambda + sys.fiber_value(x);
    x = std::min(std::max(base.apply_T(x), base.a()), base.b());
  }
  double tail = 0.0;  // lambda + lambda^2 + ... + lambda^p
  for (int k = 0; k < p; ++k) tail = lambda * (1.0 + tail);
  double y0 = std::min(std::max(pt.y, 0.0), 1.0);
  return Point{x, series + lambda_power(lambda, p) * y0 - 0.5 * tail};
}

Interval fiber_series(const SkewSystem& sys, double x, const Word& w) {
  const IntervalMap& base = sys.base();
  double slack = 1e-9 * std::max(1.0, base.b() - base.a());
  if (x < base.a() - slack || x > base.b() + slack) throw std::domain_error("point outside map domain");
  int p = static_cast<int>(w.size());
  if (p == 0) return Interval{0.0, 1.0};

  std::vector<double> orbit = base.backward_orbit(x, w);
  double lambda = sys.lambda();
  // Horner from the deepest preimage: series = sum_k lambda^{k-1} phi(x_k).
  double series = 0.0;
  for (int k = p - 1; k >= 0; --k)
    series = sys.fiber_value_at(orbit[static_cast<std::size_t>(k)], w.at(static_cast<std::size_t>(k))) +
             lambda * series;
  double tail = 0.0;
  for (int k = 0; k < p; ++k) tail = lambda * (1.0 + tail);
  double y_lo = series - 0.5 * tail;
  return Interval{y_lo, y_lo + lambda_power(lambda, p)};
}

SkewSystem derive_upper(const SkewSystem& sys) {
  if (sys.fiber().kind() != FiberProfile::Kind::exact)
    throw std::invalid_argument("bounding systems derive from the exact profile");
  const MonotoneTable& phi = sys.fiber().phi();
  double q1 = phi.eval(sys.base().a());
  double q2 = phi.eval(sys.base().b());
  return SkewSystem::create(sys.base(), FiberProfile::upper_const(q1, q2), sys.lambda());
}

SkewSystem derive_lower(const SkewSystem& sys) {
  if (sys.fiber().kind() != FiberProfile::Kind::exact)
    throw std::invalid_argument("bounding systems derive from the exact profile");
  const MonotoneTable& phi = sys.fiber().phi();
  double g1 = phi.eval(sys.base().c());
  double g2 = phi.eval(sys.base().d());
  return SkewSystem::create(sys.base(), FiberProfile::lower_const(g1, g2), sys.lambda());
}

LineIFS fiber_ifs(const SkewSystem& sys) {
  if (!sys.fiber().is_constant())
    throw std::invalid_argument("the fiber IFS is defined for constant-kind systems");
  return LineIFS::create({{sys.fiber().constant(1), sys.lambda()},
                          {sys.fiber().constant(2), sys.lambda()}});
}

double lambda_power(double lambda, int p) {
  if (p < 0) throw std::invalid_argument("negative power");
  double v = 1.0;
  for (int k = 0; k < p; ++k) v *= lambda;
  return v;
}

double theoretical_dimension(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  return 1.0 + std::log(2.0) / (-std::log(lambda));
}

}  // namespace skewdim

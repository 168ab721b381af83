#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "skewdim/interval_map.hpp"
#include "skewdim/symbolic.hpp"

namespace skewdim {

/// Thrown when an orbit lands in the base-map gap and the requested
/// operation has no meaning there.
struct gap_error : std::domain_error {
  explicit gap_error(int step_index)
      : std::domain_error("orbit entered the gap at step " + std::to_string(step_index)),
        step(step_index) {}
  int step = 0;
};

/// Fiber driving term of the skew product. Either the exact profile phi
/// (strictly monotone, tabulated) or one of the two constant-per-branch
/// bounding variants.
class FiberProfile {
public:
  enum class Kind { exact, upper_const, lower_const };

  static FiberProfile exact(MonotoneTable phi);
  static FiberProfile upper_const(double q1, double q2);
  static FiberProfile lower_const(double gamma1, double gamma2);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_constant() const { return kind_ != Kind::exact; }
  [[nodiscard]] const MonotoneTable& phi() const;
  [[nodiscard]] double constant(int branch) const;

private:
  Kind kind_ = Kind::exact;
  std::vector<MonotoneTable> phi_;  // exact kind only
  double c1_ = 0.0, c2_ = 0.0;      // constant kinds only
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Skew product F(x, y) = (T(x), phi(x) + lambda * (y - 1/2)) on
/// Q = [a, b] x [0, 1]. Construction admits any lambda in (0, 1); the
/// hypotheses that make the attractor machinery sound are checked by
/// validate_system and enforced by require_valid at the entry points that
/// need them.
class SkewSystem {
public:
  static SkewSystem create(IntervalMap base, FiberProfile fiber, double lambda);

  [[nodiscard]] const IntervalMap& base() const { return base_; }
  [[nodiscard]] const FiberProfile& fiber() const { return fiber_; }
  [[nodiscard]] double lambda() const { return lambda_; }

  /// phi(x) for the exact kind; the branch constant of x otherwise
  /// (gap_error if x falls in the gap for a constant kind).
  [[nodiscard]] double fiber_value(double x) const;

  /// Fiber term for a backward-orbit point known to lie in V_symbol.
  /// Constant kinds use the symbol, so gap membership never arises.
  [[nodiscard]] double fiber_value_at(double x, int symbol) const;

private:
  IntervalMap base_;
  FiberProfile fiber_;
  double lambda_ = 0.25;

  SkewSystem(IntervalMap base, FiberProfile fiber, double lambda)
      : base_(std::move(base)), fiber_(std::move(fiber)), lambda_(lambda) {}
};

/// Checks every hypothesis of the attractor construction: lambda in
/// (0, 1/2), full branches, phi defined on exactly [a, b] with range in
/// [1/2, 1 - lambda/2], and fiber separation |phi(c) - phi(d)| > lambda
/// (|q1 - q2| > lambda for constant kinds). Warns, without failing, when
/// lambda >= 1/3 leaves the separation hypothesis no room.
[[nodiscard]] ValidationReport validate_system(const SkewSystem& sys);

/// Throws std::invalid_argument listing all violations if validation fails.
void require_valid(const SkewSystem& sys);

[[nodiscard]] Point apply_F(const SkewSystem& sys, Point pt);

/// F^p by the closed form: T^p(x) in the base and
/// sum_{k=1}^{p} lambda^{p-k} phi(T^{k-1} x) + lambda^p y - (lambda + ... + lambda^p)/2
/// in the fiber. Throws gap_error if x, Tx, ..., T^{p-1}x meets the gap.
[[nodiscard]] Point apply_Fp_closed_form(const SkewSystem& sys, Point pt, int p);

/// Fiber interval of the depth-|w| band through x addressed by w:
/// [y_lo, y_lo + lambda^p] with
/// y_lo = sum_{k=1}^{p} lambda^{k-1} phi(x_k) - (lambda + ... + lambda^p)/2
/// over the backward orbit x_k of x selected by w. The empty word gives
/// [0, 1].
[[nodiscard]] Interval fiber_series(const SkewSystem& sys, double x, const Word& w);

/// Bounding systems: the fiber term is frozen at the branch images of the
/// domain endpoints (upper) or of the gap endpoints (lower).
[[nodiscard]] SkewSystem derive_upper(const SkewSystem& sys);
[[nodiscard]] SkewSystem derive_lower(const SkewSystem& sys);

/// The two fiber contractions of a constant-kind system as a line IFS.
[[nodiscard]] LineIFS fiber_ifs(const SkewSystem& sys);

/// lambda^p by repeated multiplication, the same arithmetic the series
/// code uses, so band heights agree bit for bit across modules.
[[nodiscard]] double lambda_power(double lambda, int p);

/// 1 + log 2 / (-log lambda), the Hausdorff dimension the attractor
/// machinery is built to confirm.
[[nodiscard]] double theoretical_dimension(double lambda);

}  // namespace skewdim

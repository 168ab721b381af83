#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewdim/monotone_table.hpp"
#include "skewdim/word.hpp"

namespace skewdim {

/// One branch of the base map: a strictly monotone map defined on [lo, hi].
/// For a full branch the endpoint images are the map domain endpoints in
/// some order; that is checked by verify_coupled_expanding, not here.
class Branch {
public:
  enum class Kind { linear, tabulated };

  static Branch linear(double lo, double hi, double image_of_lo, double image_of_hi);
  static Branch tabulated(std::vector<std::pair<double, double>> samples);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double lo() const { return lo_; }
  [[nodiscard]] double hi() const { return hi_; }
  [[nodiscard]] double image_of_lo() const { return image_lo_; }
  [[nodiscard]] double image_of_hi() const { return image_hi_; }
  [[nodiscard]] bool increasing() const { return image_hi_ > image_lo_; }
  [[nodiscard]] double image_min() const { return increasing() ? image_lo_ : image_hi_; }
  [[nodiscard]] double image_max() const { return increasing() ? image_hi_ : image_lo_; }
  [[nodiscard]] const std::optional<MonotoneTable>& table() const { return table_; }

  [[nodiscard]] double eval(double x) const;

  /// Unique preimage in [lo, hi] of a point of the image interval.
  /// Exact (one division) for linear branches, bisection for tabulated ones.
  [[nodiscard]] double inverse(double y) const;

private:
  Kind kind_ = Kind::linear;
  double lo_ = 0.0, hi_ = 1.0;
  double image_lo_ = 0.0, image_hi_ = 1.0;
  std::optional<MonotoneTable> table_;
};

struct CoupledExpandingReport {
  bool holds = false;
  double gap = 0.0;  // d - c
  std::optional<std::string> witness;  // set when holds is false
};

/// Base map T on [a, b] with branch 1 on V1 = [a, c], branch 2 on
/// V2 = [d, b], and a gap (c, d) that apply_T sends to a. Construction
/// enforces a < c < d < b and that branch intervals match V1, V2; whether
/// the branches are full (onto [a, b]) is a property to verify, not a
/// construction invariant.
class IntervalMap {
public:
  static IntervalMap create(double a, double b, double c, double d, Branch branch1, Branch branch2);

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] double d() const { return d_; }
  [[nodiscard]] const Branch& branch(int i) const;
  [[nodiscard]] bool in_gap(double x) const { return x > c_ && x < d_; }

  /// Branch index whose interval contains x (gap counts as neither).
  /// Returns 0 for gap points.
  [[nodiscard]] int branch_of(double x) const;

  [[nodiscard]] double apply_T(double x) const;
  [[nodiscard]] double branch_inverse(int i, double y) const { return branch(i).inverse(y); }

  /// Backward orbit x_1, ..., x_p selected by w: x_1 in V_{w_0} with
  /// T(x_1) = x, and x_{k+1} in V_{w_k} with T(x_{k+1}) = x_k.
  [[nodiscard]] std::vector<double> backward_orbit(double x, const Word& w) const;

private:
  double a_ = 0.0, b_ = 1.0, c_ = 0.4, d_ = 0.6;
  std::vector<Branch> branches_;
};

/// Checks that every branch image covers V1 and V2 (the coupled-expanding
/// property for a two-branch map with a gap).
[[nodiscard]] CoupledExpandingReport verify_coupled_expanding(const IntervalMap& map);

/// Topological entropy of a full-branch map: log of the branch count.
/// Throws std::invalid_argument if either branch is not onto [a, b].
[[nodiscard]] double entropy_full_branch(const IntervalMap& map);

}  // namespace skewdim

#pragma once

#include <span>
#include <vector>

#include "skewdim/word.hpp"

namespace skewdim {

/// Bernoulli weights on the two-symbol alphabet.
class Bernoulli {
public:
  static Bernoulli create(double p1);
  [[nodiscard]] double p(int symbol) const { return symbol == 1 ? p1_ : 1.0 - p1_; }
  [[nodiscard]] double p1() const { return p1_; }
  [[nodiscard]] double p2() const { return 1.0 - p1_; }

private:
  double p1_ = 0.5;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] double midpoint() const { return lo + 0.5 * (hi - lo); }
  [[nodiscard]] bool contains(double y) const { return y >= lo && y <= hi; }
};

struct AddressedInterval {
  Word word;
  Interval interval;
};

/// Iterated function system of contracting affine maps on [0, 1], each of
/// the form y -> offset + ratio * (y - 1/2). First-level images must be
/// pairwise disjoint, so every infinite address selects a distinct point.
class LineIFS {
public:
  struct AffineMap {
    double offset = 0.5;
    double ratio = 0.5;
  };

  static LineIFS create(std::vector<AffineMap> maps);

  [[nodiscard]] std::size_t map_count() const { return maps_.size(); }
  [[nodiscard]] const AffineMap& map(int i) const;
  [[nodiscard]] double apply_point(int i, double y) const;
  [[nodiscard]] Interval apply(int i, Interval v) const;
  /// Image of [0, 1] under map i.
  [[nodiscard]] Interval image(int i) const { return apply(i, Interval{0.0, 1.0}); }
  [[nodiscard]] std::vector<double> ratios() const;

private:
  std::vector<AffineMap> maps_;
};

/// Probability of the cylinder set of w under the product Bernoulli law.
[[nodiscard]] double cylinder_measure(const Bernoulli& weights, const Word& w);

/// Level-|w| interval of the IFS addressed by w (first symbol applied
/// last, so w extends to a nested chain as symbols are appended).
[[nodiscard]] Interval ifs_address_point(const LineIFS& ifs, const Word& w);

/// All level-depth intervals, sorted by left endpoint, words attached.
/// depth is capped at 24.
[[nodiscard]] std::vector<AddressedInterval> cantor_cover(const LineIFS& ifs, int depth);

/// Root of sum(ratios[i]^alpha) == 1 by bisection on
/// [0, log N / (-log max_ratio) + 1]; the similarity dimension of a
/// separated self-similar set on the line.
[[nodiscard]] double moran_dimension(std::span<const double> ratios);

}  // namespace skewdim

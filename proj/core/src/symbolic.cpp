#include "skewdim/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skewdim/util.hpp"

namespace skewdim {

Bernoulli Bernoulli::create(double p1) {
  if (!(p1 > 0.0 && p1 < 1.0)) throw std::invalid_argument("Bernoulli weight must lie in (0, 1)");
  Bernoulli b;
  b.p1_ = p1;
  return b;
}

LineIFS LineIFS::create(std::vector<AffineMap> maps) {
  if (maps.empty()) throw std::invalid_argument("IFS needs at least one map");
  for (const auto& m : maps) {
    if (!std::isfinite(m.offset) || !std::isfinite(m.ratio))
      throw std::invalid_argument("IFS map is not finite");
    if (!(m.ratio > 0.0 && m.ratio < 1.0))
      throw std::invalid_argument("IFS ratio must lie in (0, 1)");
    if (m.offset - 0.5 * m.ratio < 0.0 || m.offset + 0.5 * m.ratio > 1.0)
      throw std::invalid_argument("IFS map must send [0, 1] into [0, 1]");
  }
  // First-level images must be pairwise disjoint.
  std::vector<Interval> images;
  images.reserve(maps.size());
  for (const auto& m : maps)
    images.push_back(Interval{m.offset - 0.5 * m.ratio, m.offset + 0.5 * m.ratio});
  std::sort(images.begin(), images.end(), [](const Interval& u, const Interval& v) { return u.lo < v.lo; });
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (!(images[i].lo > images[i - 1].hi))
      throw std::invalid_argument("IFS first-level images must be pairwise disjoint");
  }
  LineIFS ifs;
  ifs.maps_ = std::move(maps);
  return ifs;
}

const LineIFS::AffineMap& LineIFS::map(int i) const {
  if (i < 1 || static_cast<std::size_t>(i) > maps_.size())
    throw std::invalid_argument("IFS map index out of range");
  return maps_[static_cast<std::size_t>(i - 1)];
}

double LineIFS::apply_point(int i, double y) const {
  const AffineMap& m = map(i);
  return m.offset + m.ratio * (y - 0.5);
}

Interval LineIFS::apply(int i, Interval v) const {
  // ratio > 0, so endpoints stay in order.
  return Interval{apply_point(i, v.lo), apply_point(i, v.hi)};
}

std::vector<double> LineIFS::ratios() const {
  std::vector<double> out;
  out.reserve(maps_.size());
  for (const auto& m : maps_) out.push_back(m.ratio);
  return out;
}

double cylinder_measure(const Bernoulli& weights, const Word& w) {
  double m = 1.0;
  for (std::size_t k = 0; k < w.size(); ++k) m *= weights.p(w.at(k));
  return m;
}

Interval ifs_address_point(const LineIFS& ifs, const Word& w) {
  // The first symbol is the outermost map, so appending symbols refines:
  // J(w . j) is a subset of J(w).
  Interval v{0.0, 1.0};
  for (std::size_t k = w.size(); k-- > 0;) v = ifs.apply(w.at(k), v);
  return v;
}

std::vector<AddressedInterval> cantor_cover(const LineIFS& ifs, int depth) {
  if (depth < 0) throw std::invalid_argument("cover depth must be nonnegative");
  if (depth > 24) throw cap_exceeded("cover depth exceeds the cap of 24");
  if (ifs.map_count() > 2)
    throw std::invalid_argument("addressed covers are only defined for at most 2 maps");
  std::vector<AddressedInterval> level{{Word{}, Interval{0.0, 1.0}}};
  for (int d = 0; d < depth; ++d) {
    std::vector<AddressedInterval> next;
    next.reserve(level.size() * ifs.map_count());
    for (const auto& entry : level) {
      for (int i = 1; static_cast<std::size_t>(i) <= ifs.map_count(); ++i) {
        // Prepending keeps the new map outermost; the interval arithmetic
        // then matches ifs_address_point bit for bit.
        next.push_back({entry.word.prepended(i), ifs.apply(i, entry.interval)});
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(),
            [](const AddressedInterval& u, const AddressedInterval& v) { return u.interval.lo < v.interval.lo; });
  return level;
}

double moran_dimension(std::span<const double> ratios) {
  if (ratios.empty()) throw std::invalid_argument("Moran equation needs at least one ratio");
  for (double r : ratios) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("Moran ratios must lie in (0, 1)");
  }
  auto f = [&ratios](double alpha) {
    double s = 0.0;
    for (double r : ratios) s += std::pow(r, alpha);
    return s - 1.0;
  };
  // N copies of the largest ratio bound the sum from above, so the root
  // sits below log N / (-log max_ratio); pad by one to keep the sign flip
  // strictly inside the bracket.
  double max_ratio = *std::max_element(ratios.begin(), ratios.end());
  double lo = 0.0;
  double hi = std::log(static_cast<double>(ratios.size())) / (-std::log(max_ratio)) + 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace skewdim

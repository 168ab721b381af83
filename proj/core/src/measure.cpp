#include "skewdim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "skewdim/attractor.hpp"
#include "skewdim/dimension.hpp"
#include "skewdim/util.hpp"

namespace skewdim {

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::lower: return "lower";
    case Provenance::exact: return "exact";
    case Provenance::upper: return "upper";
    case Provenance::control: return "control";
  }
  throw std::invalid_argument("unknown provenance");
}

namespace {

Provenance provenance_of_kind(FiberProfile::Kind kind) {
  switch (kind) {
    case FiberProfile::Kind::exact: return Provenance::exact;
    case FiberProfile::Kind::upper_const: return Provenance::upper;
    case FiberProfile::Kind::lower_const: return Provenance::lower;
  }
  throw std::invalid_argument("unknown fiber kind");
}

}  // namespace

EmpiricalMeasure sample_mu_l(const SkewSystem& sys, const Bernoulli& beta, std::size_t n, int p,
                             std::uint64_t seed, int threads) {
  require_valid(sys);
  if (!sys.fiber().is_constant())
    throw std::invalid_argument("sampling needs a constant-fiber bounding system");
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (p < 1 || p > 62) throw std::invalid_argument("coding depth out of range");

  const LineIFS ifs = fiber_ifs(sys);
  const double a = sys.base().a();
  const double b = sys.base().b();

  EmpiricalMeasure em;
  em.provenance = provenance_of_kind(sys.fiber().kind());
  em.depth = p;
  em.seed = seed;
  em.points.resize(n);
  em.words.resize(n);

  parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 eng(substream_seed(seed, i));
      double x = uniform_in(eng, a, b);
      Word w;
      for (int j = 0; j < p; ++j) w.push_back(u01(eng) < beta.p1() ? 1 : 2);
      em.points[i] = Point{x, ifs_address_point(ifs, w).midpoint()};
      em.words[i] = std::move(w);
    }
  });
  return em;
}

EmpiricalMeasure sample_uniform_square(const SkewSystem& sys, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  const double a = sys.base().a();
  const double b = sys.base().b();

  EmpiricalMeasure em;
  em.provenance = Provenance::control;
  em.depth = 0;
  em.seed = seed;
  em.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 eng(substream_seed(seed, i));
    double x = uniform_in(eng, a, b);
    double y = u01(eng);
    em.points[i] = Point{x, y};
  }
  return em;
}

EmpiricalMeasure pushforward_to_exact(const SkewSystem& target, const EmpiricalMeasure& em,
                                      int threads) {
  if (em.points.empty()) throw std::invalid_argument("empty sample set");
  if (em.words.size() != em.points.size())
    throw std::invalid_argument("pushforward needs a coded sample set");
  if (em.depth < 1) throw std::invalid_argument("pushforward needs a positive coding depth");

  // Same fiber kind means the codings already describe this attractor;
  // re-evaluating would only reorder the arithmetic.
  if (provenance_of_kind(target.fiber().kind()) == em.provenance) return em;

  EmpiricalMeasure out;
  out.provenance = provenance_of_kind(target.fiber().kind());
  out.depth = em.depth;
  out.seed = em.seed;
  out.points.resize(em.points.size());
  out.words = em.words;

  parallel_for_chunks(em.points.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      double x = em.points[i].x;
      out.points[i] = Point{x, band_center(target, x, em.words[i])};
    }
  });
  return out;
}

InvarianceReport invariance_audit(const SkewSystem& sys, const EmpiricalMeasure& em,
                                  double epsilon) {
  if (em.points.empty()) throw std::invalid_argument("empty sample set");
  const BoxGrid grid(epsilon, domain_rect(sys));
  const IntervalMap& base = sys.base();

  std::vector<std::uint64_t> sample_keys;
  std::vector<std::uint64_t> image_keys;
  sample_keys.reserve(em.points.size());
  image_keys.reserve(em.points.size());

  InvarianceReport report;
  report.n = em.points.size();
  for (const Point& z : em.points) {
    sample_keys.push_back(grid.key_of(z.x, z.y));
    if (base.in_gap(z.x)) {
      ++report.dropped;
      continue;
    }
    Point img = apply_F(sys, z);
    image_keys.push_back(grid.key_of(img.x, img.y));
  }
  if (image_keys.empty()) throw std::domain_error("every sample fell in the gap; nothing to audit");

  std::sort(sample_keys.begin(), sample_keys.end());
  std::sort(image_keys.begin(), image_keys.end());

  const double wa = 1.0 / static_cast<double>(sample_keys.size());
  const double wb = 1.0 / static_cast<double>(image_keys.size());
  double tv = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sample_keys.size() || j < image_keys.size()) {
    std::uint64_t key;
    if (j == image_keys.size() || (i < sample_keys.size() && sample_keys[i] < image_keys[j]))
      key = sample_keys[i];
    else if (i == sample_keys.size() || image_keys[j] < sample_keys[i])
      key = image_keys[j];
    else
      key = sample_keys[i];
    double mass_a = 0.0, mass_b = 0.0;
    while (i < sample_keys.size() && sample_keys[i] == key) mass_a += wa, ++i;
    while (j < image_keys.size() && image_keys[j] == key) mass_b += wb, ++j;
    tv += std::abs(mass_a - mass_b);
  }
  report.tv_distance = 0.5 * tv;
  return report;
}

double birkhoff_average(const SkewSystem& sys, const std::function<double(Point)>& observable,
                        Point start, std::size_t n_steps) {
  if (n_steps == 0) throw std::invalid_argument("Birkhoff average needs at least one step");
  Point z = start;
  double sum = 0.0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    sum += observable(z);
    if (k + 1 == n_steps) break;
    if (sys.base().in_gap(z.x)) throw gap_error(static_cast<int>(k));
    z = apply_F(sys, z);
  }
  return sum / static_cast<double>(n_steps);
}

namespace {

double inverse_lipschitz(const Branch& br) {
  double image_span = std::abs(br.image_of_hi() - br.image_of_lo());
  if (br.kind() == Branch::Kind::linear) return (br.hi() - br.lo()) / image_span;
  const MonotoneTable& t = *br.table();
  double worst = 0.0;
  for (std::size_t j = 1; j < t.xs().size(); ++j)
    worst = std::max(worst, (t.xs()[j] - t.xs()[j - 1]) / std::abs(t.ys()[j] - t.ys()[j - 1]));
  return worst;
}

}  // namespace

double birkhoff_itinerary_average(const SkewSystem& sys,
                                  const std::function<double(Point)>& observable,
                                  const Bernoulli& beta, std::size_t n_steps, std::uint64_t seed) {
  if (n_steps == 0) throw std::invalid_argument("Birkhoff average needs at least one step");
  const IntervalMap& base = sys.base();
  double ratio = std::max(inverse_lipschitz(base.branch(1)), inverse_lipschitz(base.branch(2)));
  if (!(ratio < 1.0)) throw std::invalid_argument("base branches must be expanding");

  // Deep enough that the anchor choice perturbs x_k by less than 1e-15.
  double span = base.b() - base.a();
  int depth = static_cast<int>(std::ceil(std::log(span / 1e-15) / -std::log(ratio)));
  depth = std::clamp(depth, 1, 4000);

  std::mt19937_64 eng(substream_seed(seed, 0));
  std::vector<std::uint8_t> symbols(n_steps + static_cast<std::size_t>(depth));
  for (std::uint8_t& s : symbols) s = u01(eng) < beta.p1() ? 1 : 2;

  double y = 0.5;
  double sum = 0.0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const Branch& anchor = base.branch(symbols[k + static_cast<std::size_t>(depth)]);
    double x = 0.5 * (anchor.lo() + anchor.hi());
    for (std::size_t j = k + static_cast<std::size_t>(depth); j-- > k;)
      x = base.branch_inverse(symbols[j], x);
    sum += observable(Point{x, y});
    y = sys.fiber_value_at(x, symbols[k]) + sys.lambda() * (y - 0.5);
  }
  return sum / static_cast<double>(n_steps);
}

}  // namespace skewdim

#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "skewdim/skew_system.hpp"
#include "skewdim/symbolic.hpp"
#include "skewdim/word.hpp"

namespace skewdim {

/// Which attractor a sample set lives on. `control` marks synthetic
/// point sets (negative controls) that carry no codings.
enum class Provenance { lower, exact, upper, control };

[[nodiscard]] std::string_view provenance_name(Provenance p);

/// Uniformly weighted sample of a measure on Q. Regenerating from
/// (seed, size, depth, system) is bit-identical; words hold the fiber
/// coding of each point and stay aligned with points index by index.
struct EmpiricalMeasure {
  Provenance provenance = Provenance::lower;
  int depth = 0;
  std::uint64_t seed = 0;
  std::vector<Point> points;
  std::vector<Word> words;

  [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// Draws n samples of the product measure (normalized Lebesgue in x)
/// x (Bernoulli-coded fiber Cantor measure) on the attractor of a
/// constant-fiber bounding system: x uniform on [a,b], the fiber word
/// Bernoulli(beta) of length p, y the midpoint of the word's fiber
/// address interval. Per-sample substreams keep the result independent
/// of the thread count.
[[nodiscard]] EmpiricalMeasure sample_mu_l(const SkewSystem& sys, const Bernoulli& beta,
                                           std::size_t n, int p, std::uint64_t seed,
                                           int threads = 1);

/// Uniform samples on Q = [a,b] x [0,1]; the negative control for the
/// invariance audit. Carries no codings.
[[nodiscard]] EmpiricalMeasure sample_uniform_square(const SkewSystem& sys, std::size_t n,
                                                     std::uint64_t seed);

/// Transports a coded sample set to the target system by re-evaluating
/// every (x, word) coding there: y becomes the target's band center.
/// When the target's fiber kind already matches the sample provenance
/// the set is returned unchanged.
[[nodiscard]] EmpiricalMeasure pushforward_to_exact(const SkewSystem& target,
                                                    const EmpiricalMeasure& em, int threads = 1);

struct InvarianceReport {
  double tv_distance = 0.0;
  std::size_t dropped = 0;
  std::size_t n = 0;
};

/// Total-variation distance between the epsilon-box histogram of the
/// samples and that of their one-step images. Points whose x lies in
/// the gap (c,d) have no defined forward step on the bounding systems;
/// they are dropped from the image side (and counted), and the image
/// histogram is renormalized over the kept points.
[[nodiscard]] InvarianceReport invariance_audit(const SkewSystem& sys, const EmpiricalMeasure& em,
                                                double epsilon);

/// (1/n) sum of observable over the literal forward orbit of start.
/// Throws gap_error when the orbit lands in the gap before the last
/// observation; expansion makes double orbits leave the gap-avoiding
/// set within a few dozen steps, so long averages need the itinerary
/// variant below.
[[nodiscard]] double birkhoff_average(const SkewSystem& sys,
                                      const std::function<double(Point)>& observable, Point start,
                                      std::size_t n_steps);

/// Birkhoff average along a generic orbit realized from its symbolic
/// itinerary: symbols are drawn Bernoulli(beta), each x_k is the
/// backward composition of the next D inverse branches (D deep enough
/// that the anchor choice is below double precision), and y follows
/// the fiber recursion. The realized sequence is a pseudo-orbit of F
/// with per-step defect below 1e-15 that never enters the gap.
[[nodiscard]] double birkhoff_itinerary_average(const SkewSystem& sys,
                                                const std::function<double(Point)>& observable,
                                                const Bernoulli& beta, std::size_t n_steps,
                                                std::uint64_t seed);

}  // namespace skewdim

#pragma once

#include <string>
#include <vector>

#include "skewdim/interval_map.hpp"
#include "skewdim/skew_system.hpp"

namespace fixtures {

/// Two full linear branches 2.5x on [0, 0.4] and 2.5x - 1.5 on [0.6, 1].
inline skewdim::IntervalMap ref_base() {
  return skewdim::IntervalMap::create(0.0, 1.0, 0.4, 0.6,
                                      skewdim::Branch::linear(0.0, 0.4, 0.0, 1.0),
                                      skewdim::Branch::linear(0.6, 1.0, 0.0, 1.0));
}

inline skewdim::MonotoneTable ref_phi() {
  return skewdim::MonotoneTable::create({{0.0, 0.5}, {0.4, 0.55}, {0.6, 0.82}, {1.0, 0.875}});
}

/// Reference skew product: lambda = 1/4 over the reference base.
inline skewdim::SkewSystem ref_exact() {
  return skewdim::SkewSystem::create(ref_base(), skewdim::FiberProfile::exact(ref_phi()), 0.25);
}

inline skewdim::SkewSystem ref_lower() { return skewdim::derive_lower(ref_exact()); }
inline skewdim::SkewSystem ref_upper() { return skewdim::derive_upper(ref_exact()); }

/// Valid exact systems at other contraction ratios, phi picked so the
/// range fits [1/2, 1 - lambda/2] and |phi(c) - phi(d)| > lambda.
inline skewdim::SkewSystem sys_lambda(double lambda) {
  std::vector<std::pair<double, double>> samples;
  if (lambda == 0.2)
    samples = {{0.0, 0.5}, {0.4, 0.55}, {0.6, 0.85}, {1.0, 0.9}};
  else if (lambda == 0.3)
    samples = {{0.0, 0.5}, {0.4, 0.51}, {0.6, 0.84}, {1.0, 0.85}};
  else
    samples = {{0.0, 0.5}, {0.4, 0.55}, {0.6, 0.82}, {1.0, 0.875}};
  return skewdim::SkewSystem::create(ref_base(),
                                     skewdim::FiberProfile::exact(
                                         skewdim::MonotoneTable::create(std::move(samples))),
                                     lambda);
}

struct CorpusCase {
  std::string name;
  skewdim::SkewSystem sys;
};

/// Twenty valid systems spanning contraction ratios, gap geometries,
/// fiber kinds, and one orientation-reversing branch per five cases.
inline std::vector<CorpusCase> corpus() {
  std::vector<CorpusCase> cases;
  for (int k = 0; k < 20; ++k) {
    double lambda = 0.10 + 0.01 * k;
    double c = 0.30 + 0.01 * k;
    double d = c + 0.08 + 0.004 * k;
    skewdim::Branch branch1 = skewdim::Branch::linear(0.0, c, 0.0, 1.0);
    skewdim::Branch branch2 = k % 5 == 3 ? skewdim::Branch::linear(d, 1.0, 1.0, 0.0)
                                         : skewdim::Branch::linear(d, 1.0, 0.0, 1.0);
    skewdim::IntervalMap base = skewdim::IntervalMap::create(0.0, 1.0, c, d, branch1, branch2);

    double lo_level = 0.502;
    double hi_level = 1.0 - lambda / 2.0 - 0.002;
    skewdim::FiberProfile fiber =
        k % 2 == 0 ? skewdim::FiberProfile::exact(skewdim::MonotoneTable::create(
                         {{0.0, lo_level},
                          {c, lo_level + 0.01},
                          {d, hi_level - 0.01},
                          {1.0, hi_level}}))
                   : skewdim::FiberProfile::lower_const(lo_level, hi_level);
    cases.push_back(CorpusCase{"case" + std::to_string(k),
                               skewdim::SkewSystem::create(std::move(base), std::move(fiber),
                                                           lambda)});
  }
  return cases;
}

}  // namespace fixtures

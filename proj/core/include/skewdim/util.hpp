#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace skewdim {

/// Thrown when a request exceeds a documented size cap (cover depth,
/// address depth, ...). CLI maps this to its own exit code.
struct cap_exceeded : std::length_error {
  using std::length_error::length_error;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Seed for the index-th independent substream of a run seed. Mixing both
/// words through splitmix64 keeps substreams decorrelated even for
/// consecutive seeds or indices.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= index * 0xd1342543de82ef95ull + 0x632be59bd9b4e019ull;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ull);
}

/// Uniform double in [0,1) from the top 53 bits of one engine draw.
/// std::uniform_real_distribution is implementation-defined; this is not,
/// and reproducibility across compilers is part of the output contract.
inline double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * u01(eng);
}

/// 0 means "use hardware concurrency"; anything else is clamped to >= 1.
int resolve_threads(int requested);

/// Runs fn(begin, end, chunk_index) over a disjoint chunking of [0, n).
/// Chunk boundaries depend only on (n, threads), so per-chunk results merged
/// in chunk order are deterministic. fn must not throw.
void parallel_for_chunks(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t, int)>& fn);

}  // namespace skewdim

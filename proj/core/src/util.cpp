#include "skewdim/util.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace skewdim {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_chunks(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t, int)>& fn) {
  int t = resolve_threads(threads);
  std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(t), std::max<std::size_t>(n, 1));
  if (chunks <= 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  std::size_t base = n / chunks;
  std::size_t rem = n % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t len = base + (c < rem ? 1 : 0);
    std::size_t end = begin + len;
    pool.emplace_back([&fn, begin, end, c] { fn(begin, end, static_cast<int>(c)); });
    begin = end;
  }
  for (auto& th : pool) th.join();
}

}  // namespace skewdim

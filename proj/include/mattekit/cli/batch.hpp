#ifndef MATTEKIT_CLI_BATCH_HPP_
#define MATTEKIT_CLI_BATCH_HPP_

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace mattekit::cli {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Items are
/// independent; callers index into preallocated result slots so the outcome
/// does not depend on scheduling.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mattekit::cli

#endif  // MATTEKIT_CLI_BATCH_HPP_

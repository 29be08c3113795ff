#pragma once
#include <atomic>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fermat {
namespace detail {

// Slot tasks write only slot-indexed storage, so totals merged in slot order
// are identical for every worker count.
inline void parallel_slots(int workers, int nslots,
                           const std::function<void(int)>& fn) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (workers == 1) {
    for (int i = 0; i < nslots; i++) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr eptr;
  std::mutex emu;
  int nw = std::min(workers, nslots);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int w = 0; w < nw; w++)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= nslots || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(emu);
          if (!eptr) eptr = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (eptr) std::rethrow_exception(eptr);
}

}  // namespace detail
}  // namespace fermat

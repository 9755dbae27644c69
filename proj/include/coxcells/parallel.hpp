/*
  This is parallel.hpp

  Minimal work loop shared by the table builders: jobs pull indices
  off an atomic counter, the first exception wins and is rethrown
  after the join.  Each worker also learns its own slot index so the
  caller can hand out private scratch buffers and merge them in a
  fixed order afterwards, keeping results independent of the thread
  count.
*/

#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace coxcells {

inline void run_parallel(int threads, int njobs,
                         const std::function<void(int, int)>& job) {
  int nthreads = std::min(threads, njobs);
  if (nthreads <= 1) {
    for (int i = 0; i < njobs; ++i) job(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  std::atomic<int> next{0};
  for (int k = 0; k < nthreads; ++k)
    pool.emplace_back([&, k]() {
      try {
        while (true) {
          int i = next.fetch_add(1);
          if (i >= njobs) break;
          job(i, k);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace coxcells

#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace tsmatch {

/// Chunked parallel loop. fn(i) must be independent across i and write only
/// to slots keyed by i, so results never depend on the thread count.
template <typename Fn>
void parallel_for(Eigen::Index begin, Eigen::Index end, int threads, Fn&& fn) {
  if (end <= begin) return;
  const Eigen::Index count = end - begin;
  Eigen::Index workers = threads;
  if (workers > count) workers = count;
  if (workers <= 1) {
    for (Eigen::Index i = begin; i < end; ++i) fn(i);
    return;
  }
  const Eigen::Index chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (Eigen::Index t = 0; t < workers; ++t) {
    const Eigen::Index lo = begin + chunk * t;
    const Eigen::Index hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn, &first_error, &error_mutex] {
      try {
        for (Eigen::Index i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tsmatch

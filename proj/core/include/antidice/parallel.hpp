#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stop_token>
#include <thread>
#include <vector>

namespace antidice {

/// Worker count from ANTIDICE_JOBS, falling back to 1.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("ANTIDICE_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Indices are
/// claimed dynamically; callers write results into slot i so output order
/// never depends on scheduling. The first exception is rethrown after all
/// workers stop; a stop request ends the loop between indices.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body, std::stop_token stop = {}) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    while (!failed.load() && !stop.stop_requested()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed.store(true);
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace antidice

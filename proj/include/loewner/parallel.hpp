#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace loewner {

// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
// exception (by index) is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += jobs) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Smallest index i in [0, count) for which trial(i) returns a value, together
// with that value. Trials run in blocks so the answer does not depend on jobs.
template <typename R, typename Trial>
std::optional<std::pair<std::size_t, R>> first_hit(std::size_t count, unsigned jobs, Trial trial) {
  const std::size_t block = std::max<std::size_t>(1, 4 * static_cast<std::size_t>(std::max(1u, jobs)));
  for (std::size_t start = 0; start < count; start += block) {
    const std::size_t len = std::min(block, count - start);
    std::vector<std::optional<R>> results(len);
    std::vector<std::exception_ptr> errors(len);
    parallel_for(len, jobs, [&](std::size_t k) {
      try {
        results[k] = trial(start + k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
    for (std::size_t k = 0; k < len; ++k) {
      if (errors[k]) std::rethrow_exception(errors[k]);
      if (results[k]) return std::make_pair(start + k, std::move(*results[k]));
    }
  }
  return std::nullopt;
}

}  // namespace loewner

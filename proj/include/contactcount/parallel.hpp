#pragma once

// Deterministic parallel reduction. Items are split into contiguous chunks,
// each chunk is summed in order, and chunk totals are combined in order, so
// the result does not depend on scheduling. Nested calls run serially.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace contactcount {

namespace detail {
inline thread_local bool inside_parallel_sum = false;
}

template <typename T, typename Fn>
T parallel_sum(std::size_t count, unsigned threads, Fn&& term, T zero = T{}) {
  const std::size_t workers =
      (detail::inside_parallel_sum || threads <= 1 || count < 2) ? 1 : std::min<std::size_t>(threads, count);
  if (workers == 1) {
    T total = zero;
    for (std::size_t i = 0; i < count; ++i) total += term(i);
    return total;
  }

  std::vector<T> partial(workers, zero);
  std::vector<std::exception_ptr> failure(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      detail::inside_parallel_sum = true;
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      try {
        for (std::size_t i = begin; i < end; ++i) partial[w] += term(i);
      } catch (...) {
        failure[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& f : failure)
    if (f) std::rethrow_exception(f);

  T total = zero;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace contactcount

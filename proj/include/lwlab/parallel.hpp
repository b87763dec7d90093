#pragma once

// Index-ordered parallel map. Every index is computed independently and
// stored in its own slot, so results never depend on the thread count.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace lwlab {

namespace detail {
inline thread_local bool in_worker = false;
}

/// Worker cap from LWLAB_THREADS, else hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("LWLAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// out[i] = f(i) for i in [0, count). Nested calls run serially. If several
/// indices throw, the exception of the lowest index is rethrown.
template <class F>
auto parallel_map(std::size_t count, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  const int threads = detail::in_worker ? 1 : std::min<int>(worker_count(), static_cast<int>(count));

  auto run = [&](std::size_t i) {
    try {
      slots[i].emplace(f(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        detail::in_worker = true;
        for (std::size_t i; (i = next.fetch_add(1)) < count;) run(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace lwlab

#include "increg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace increg {

std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INCREG_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) {
      return static_cast<std::size_t>(parsed);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::vector<TaskFailure> run_indexed_tasks(
    std::size_t count, std::size_t threads,
    const std::function<void(std::size_t)>& body) {
  std::vector<TaskFailure> failures;
  if (count == 0) return failures;

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        failures.push_back({i, e.what()});
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        failures.push_back({i, "unknown error"});
      }
    }
  };

  const std::size_t pool = std::min(std::max<std::size_t>(threads, 1), count);
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
  }

  std::sort(failures.begin(), failures.end(),
            [](const TaskFailure& a, const TaskFailure& b) {
              return a.index < b.index;
            });
  return failures;
}

}  // namespace increg

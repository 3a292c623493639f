#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace increg {

/// Worker count resolution: an explicit request wins, then the
/// INCREG_THREADS environment variable, then hardware concurrency.
/// Always at least 1.
std::size_t resolve_thread_count(std::size_t requested);

struct TaskFailure {
  std::size_t index = 0;
  std::string message;
};

/// Runs body(0) ... body(count - 1) on a pool of `threads` workers.
/// Each task writes only to its own preallocated slot, so results are
/// independent of scheduling. Exceptions are captured per task and
/// returned sorted by index.
std::vector<TaskFailure> run_indexed_tasks(
    std::size_t count, std::size_t threads,
    const std::function<void(std::size_t)>& body);

}  // namespace increg

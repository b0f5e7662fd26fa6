#include "graphflow/cancel.hpp"

#include <atomic>

namespace graphflow {

namespace {
std::atomic<bool> flag{false};
static_assert(std::atomic<bool>::is_always_lock_free);
}  // namespace

void request_cancel() noexcept { flag.store(true, std::memory_order_relaxed); }
void reset_cancel() noexcept { flag.store(false, std::memory_order_relaxed); }
bool cancel_requested() noexcept { return flag.load(std::memory_order_relaxed); }

void check_cancel() {
  if (cancel_requested()) throw Cancelled();
}

}  // namespace graphflow

#pragma once

#include "graphflow/errors.hpp"

namespace graphflow {

/// Raised by long-running solves once cancellation has been requested.
class Cancelled : public ResourceError {
 public:
  Cancelled() : ResourceError("cancelled") {}
};

/// Process-wide cooperative cancellation. request_cancel is async-signal-safe.
void request_cancel() noexcept;
void reset_cancel() noexcept;
bool cancel_requested() noexcept;

/// Throws Cancelled if cancellation was requested. Not for use inside OpenMP regions.
void check_cancel();

}  // namespace graphflow

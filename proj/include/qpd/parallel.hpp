#pragma once

#include <cstddef>

namespace qpd {

// Worker count: QPD_THREADS if set (>= 1), else hardware concurrency.
std::size_t thread_count();

}  // namespace qpd

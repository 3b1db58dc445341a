#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace signcorr {

/// Worker count for a library call: `requested` when nonzero, otherwise the
/// hardware concurrency; either way capped by the SIGNCORR_THREADS
/// environment variable when it is set to a positive integer.
unsigned resolve_threads(unsigned requested = 0);

/// Runs task(i) for i in [0, count) on up to `threads` workers. Exceptions
/// are collected and the one from the lowest failing index is rethrown, so
/// failures are reported identically for every thread count.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

} // namespace signcorr

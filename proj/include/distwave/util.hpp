#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace distwave {

/// Chunked parallel map over [0, n): each index is processed exactly once and
/// writes only its own output slot, so results are independent of the thread
/// count. threads <= 0 picks hardware_concurrency.
void parallel_for(long n, const std::function<void(long)>& body, int threads = 0);

/// Floating-point formatting used for every emitted artifact: 17 significant
/// digits, locale-independent.
std::string format_double(double v);

/// FNV-1a 64-bit, hex-encoded; used to stamp reports with their configuration.
std::string fnv1a_hex(const std::string& data);

} // namespace distwave

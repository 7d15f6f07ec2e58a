#include "covhyp/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "covhyp/errors.hpp"

namespace covhyp {

int worker_count() {
  const char* env = std::getenv("COVHYP_THREADS");
  if (env == nullptr || *env == '\0') {
    return 1;
  }
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0 || v > 4096) {
    throw InvalidParameter(std::string("COVHYP_THREADS must be a small nonnegative integer, got '") +
                           env + "'");
  }
  if (v == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
  return static_cast<int>(v);
}

void parallel_for(long n, const std::function<void(long, long)>& body) {
  if (n <= 0) {
    return;
  }
  const int workers = worker_count();
  if (workers <= 1 || n < 2 * workers) {
    body(0, n);
    return;
  }
  const long chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  // First worker exception wins (lowest chunk index), rethrown after join so
  // callers see the same error they would get serially.
  std::mutex mu;
  std::exception_ptr first_error;
  long first_error_chunk = -1;
  for (int w = 0; w < workers; ++w) {
    const long begin = w * chunk;
    const long end = std::min(n, begin + chunk);
    if (begin >= end) {
      break;
    }
    pool.emplace_back([&body, &mu, &first_error, &first_error_chunk, begin, end, w] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (first_error_chunk < 0 || w < first_error_chunk) {
          first_error = std::current_exception();
          first_error_chunk = w;
        }
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace covhyp

#include "hs_sharp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hs_sharp {

namespace {
std::atomic<unsigned> g_limit{0};
}

void set_thread_limit(unsigned limit) { g_limit.store(limit); }

unsigned thread_limit() {
  const unsigned limit = g_limit.load();
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return limit == 0 ? hw : std::min(limit, hw);
}

bool apply_thread_limit_from_env() {
  const char* raw = std::getenv("HS_SHARP_THREADS");
  if (raw == nullptr) return false;
  try {
    const long v = std::stol(raw);
    if (v <= 0) return false;
    set_thread_limit(static_cast<unsigned>(v));
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_limit(), count);
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t start) {
    for (std::size_t i = start; i < count; i += std::max<std::size_t>(workers, 1)) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hs_sharp

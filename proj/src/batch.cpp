#include "shiftz/batch.hpp"

#include <exception>

namespace shiftz {

namespace {

// Runs body(i) for i in [0, n); the first exception is rethrown after the loop.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& body) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(shiftz_batch_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

bool parallel_available() {
#ifdef SHIFTZ_OPENMP
  return true;
#else
  return false;
#endif
}

std::vector<char> contains_batch(const SpaceHandle& h, const std::vector<BiPoint>& xs, Exec exec) {
  std::vector<char> out(xs.size(), 0);
  for_each_index(xs.size(), exec, [&](std::size_t i) { out[i] = h.contains(xs[i]) ? 1 : 0; });
  return out;
}

std::vector<BiPoint> apply_batch(const SlidingBlockCode& c, const std::vector<BiPoint>& xs, Exec exec) {
  std::vector<BiPoint> out(xs.size());
  for_each_index(xs.size(), exec, [&](std::size_t i) { out[i] = sbc_apply(c, xs[i]); });
  return out;
}

}  // namespace shiftz

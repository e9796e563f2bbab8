#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tapmeans::detail {
namespace {

// The FFTW planner is not thread-safe; plans are created once per (N, sign)
// under a lock and executed lock-free through the new-array interface.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void dft(std::span<const Complex> in, std::span<Complex> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("dft: size mismatch");
  if (in.empty()) return;
  const auto plan = cache().get(static_cast<int>(in.size()), sign);
  // fftw_execute_dft takes a non-const input pointer but does not modify it
  // for out-of-place plans.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace tapmeans::detail

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace majorant_lab::detail {

namespace {

// The FFTW planner is not thread-safe; execution with the new-array
// interface is. FFTW_ESTIMATE keeps plan selection deterministic.
class PlanCache {
 public:
  fftw_plan get(std::span<const std::size_t> shape, FftSign sign) {
    Key key{std::vector<std::size_t>(shape.begin(), shape.end()), static_cast<int>(sign)};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::vector<int> dims(shape.begin(), shape.end());
    std::size_t total = 1;
    for (auto m : shape) total *= m;
    auto* scratch = fftw_alloc_complex(total);
    if (scratch == nullptr) throw std::bad_alloc();
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch, scratch,
                                   static_cast<int>(sign), FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("fftw_plan_dft failed");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  using Key = std::pair<std::vector<std::size_t>, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, std::span<const std::size_t> shape,
                 FftSign sign) {
  fftw_plan plan = cache().get(shape, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace majorant_lab::detail

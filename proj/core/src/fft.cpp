#include "fft.hpp"

#include <fftw3.h>

#include <array>
#include <cstddef>
#include <map>
#include <mutex>
#include <tuple>

namespace nlsscat::detail {
namespace {

struct PlanKey {
  int d;
  int n;
  int sign;
  bool in_place;
  auto operator<=>(const PlanKey&) const = default;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const PlanKey& key) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::array<int, 3> dims{key.n, key.n, key.n};
    std::size_t total = 1;
    for (int i = 0; i < key.d; ++i) total *= static_cast<std::size_t>(key.n);
    auto* a = fftw_alloc_complex(total);
    auto* b = key.in_place ? a : fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(key.d, dims.data(), a, b, key.sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (b != a) fftw_free(b);
    fftw_free(a);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(int d, int n, int sign, const std::complex<double>* in,
             std::complex<double>* out) {
  const bool in_place = (in == out);
  fftw_plan plan = cache().get(PlanKey{d, n, sign, in_place});
  // FFTW does not write to the input of an out-of-place complex DFT.
  auto* src = reinterpret_cast<fftw_complex*>(
      const_cast<std::complex<double>*>(in));
  fftw_execute_dft(plan, src, reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void fft_forward(int d, int n, const std::complex<double>* in,
                 std::complex<double>* out) {
  execute(d, n, FFTW_FORWARD, in, out);
}

void fft_inverse(int d, int n, const std::complex<double>* in,
                 std::complex<double>* out) {
  execute(d, n, FFTW_BACKWARD, in, out);
}

}  // namespace nlsscat::detail

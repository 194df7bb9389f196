#include "kp5/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "kp5/errors.hpp"

namespace kp5::fft {
namespace {

struct PlanKey {
  int n0;
  int n1;
  int sign;
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
    const std::size_t n = static_cast<std::size_t>(key.n0) * (key.n1 > 0 ? key.n1 : 1);
    std::vector<cplx> a(n), b(n);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = key.n1 > 0 ? fftw_plan_dft_2d(key.n0, key.n1, in, out, key.sign, flags)
                                : fftw_plan_dft_1d(key.n0, in, out, key.sign, flags);
    if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
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

void run(std::span<const cplx> in, std::span<cplx> out, int n0, int n1, int sign) {
  const std::size_t n = static_cast<std::size_t>(n0) * (n1 > 0 ? n1 : 1);
  if (in.size() != n || out.size() != n) throw ContractError("FFT buffer size does not match shape");
  if (static_cast<const void*>(in.data()) == static_cast<const void*>(out.data())) {
    std::vector<cplx> copy(in.begin(), in.end());
    run(copy, out, n0, n1, sign);
    return;
  }
  fftw_plan plan = cache().get({n0, n1, sign});
  // FFTW_ESTIMATE plans never write to the input of an out-of-place c2c transform.
  auto* src = const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data()));
  fftw_execute_dft(plan, src, reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void forward_2d(std::span<const cplx> in, std::span<cplx> out, int n0, int n1) {
  run(in, out, n0, n1, FFTW_FORWARD);
}
void backward_2d(std::span<const cplx> in, std::span<cplx> out, int n0, int n1) {
  run(in, out, n0, n1, FFTW_BACKWARD);
}
void forward_1d(std::span<const cplx> in, std::span<cplx> out, int n) {
  run(in, out, n, 0, FFTW_FORWARD);
}
void backward_1d(std::span<const cplx> in, std::span<cplx> out, int n) {
  run(in, out, n, 0, FFTW_BACKWARD);
}

}  // namespace kp5::fft

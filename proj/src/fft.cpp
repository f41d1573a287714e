#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <vector>

#include "szego/errors.hpp"
#include "szego/numerics.hpp"

namespace szego {

namespace {

// The FFTW planner is not reentrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft::Fft(int size) : size_(size) {
  if (!is_power_of_two(size)) throw std::invalid_argument("Fft: size must be a power of two");
  std::vector<Complex> scratch_in(size), scratch_out(size);
  // ESTIMATE keeps the chosen algorithm, and hence the rounding, reproducible.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard<std::mutex> lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_1d(size, as_fftw(scratch_in.data()), as_fftw(scratch_out.data()),
                                   FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_dft_1d(size, as_fftw(scratch_in.data()), as_fftw(scratch_out.data()),
                                    FFTW_BACKWARD, flags);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (backward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void Fft::forward(std::span<const Complex> in, std::span<Complex> out) const {
  if (static_cast<int>(in.size()) != size_ || static_cast<int>(out.size()) != size_)
    throw std::invalid_argument("Fft::forward: buffer size mismatch");
  std::vector<Complex> buf(in.begin(), in.end());
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(buf.data()), as_fftw(out.data()));
}

void Fft::backward(std::span<const Complex> in, std::span<Complex> out) const {
  if (static_cast<int>(in.size()) != size_ || static_cast<int>(out.size()) != size_)
    throw std::invalid_argument("Fft::backward: buffer size mismatch");
  std::vector<Complex> buf(in.begin(), in.end());
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(buf.data()), as_fftw(out.data()));
}

}  // namespace szego

#pragma once

#include <complex>
#include <span>

namespace kp5::fft {

using cplx = std::complex<double>;

// Unnormalised FFTW transforms. Plans are cached per (shape, direction) and
// executed on caller-owned buffers, so concurrent calls are safe.
void forward_2d(std::span<const cplx> in, std::span<cplx> out, int n0, int n1);
void backward_2d(std::span<const cplx> in, std::span<cplx> out, int n0, int n1);
void forward_1d(std::span<const cplx> in, std::span<cplx> out, int n);
void backward_1d(std::span<const cplx> in, std::span<cplx> out, int n);

}  // namespace kp5::fft

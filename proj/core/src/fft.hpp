#pragma once

#include <span>

#include "tapmeans/fourier.hpp"

namespace tapmeans::detail {

/// out_m = sum_j in_j e^{sign * 2 pi i j m / N}, unnormalized.
/// `in` and `out` must have equal length and must not alias.
void dft(std::span<const Complex> in, std::span<Complex> out, int sign);

}  // namespace tapmeans::detail

#pragma once

#include <span>
#include <vector>

namespace decpauli {

/// In-place unnormalized Walsh-Hadamard transform,
/// W[u] = sum_v (-1)^(u.v) f[v]. Length must be a power of two.
void fwht(std::span<double> v);

/// Inverse transform: fwht scaled by 1/len, so ifwht(fwht(v)) == v.
void ifwht(std::span<double> v);

std::vector<double> fwht_copy(std::span<const double> v);
std::vector<double> ifwht_copy(std::span<const double> v);

}  // namespace decpauli

#include "decpauli/fwht.hpp"

#include <stdexcept>

namespace decpauli {

namespace {

bool is_power_of_two(size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void fwht(std::span<double> v) {
  const size_t len = v.size();
  if (!is_power_of_two(len)) {
    throw std::invalid_argument("fwht length must be a power of two");
  }
  for (size_t h = 1; h < len; h *= 2) {
    for (size_t i = 0; i < len; i += h * 2) {
      for (size_t j = i; j < i + h; ++j) {
        const double x = v[j];
        const double y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

void ifwht(std::span<double> v) {
  fwht(v);
  const double scale = 1.0 / static_cast<double>(v.size());
  for (double& x : v) x *= scale;
}

std::vector<double> fwht_copy(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  fwht(out);
  return out;
}

std::vector<double> ifwht_copy(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  ifwht(out);
  return out;
}

}  // namespace decpauli

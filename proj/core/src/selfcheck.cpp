#include "decpauli/selfcheck.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "decpauli/correct.hpp"
#include "decpauli/fwht.hpp"
#include "decpauli/noise.hpp"
#include "decpauli/rng.hpp"

namespace decpauli::selfcheck {

std::vector<double> naive_hadamard_transform(std::span<const double> v) {
  const size_t len = v.size();
  std::vector<double> out(len, 0.0);
  for (size_t u = 0; u < len; ++u) {
    for (size_t w = 0; w < len; ++w) {
      const double sign = std::popcount(u & w) & 1 ? -1.0 : 1.0;
      out[u] += sign * v[w];
    }
  }
  return out;
}

std::vector<double> naive_xor_convolve(std::span<const double> a, std::span<const double> b) {
  const size_t len = a.size();
  std::vector<double> out(len, 0.0);
  for (size_t i = 0; i < len; ++i) {
    for (size_t j = 0; j < len; ++j) {
      out[i ^ j] += a[i] * b[j];
    }
  }
  return out;
}

std::vector<double> brute_force_simplex_projection(std::span<const double> v) {
  const size_t len = v.size();
  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (uint64_t support = 1; support < (uint64_t{1} << len); ++support) {
    double sum = 0.0;
    int count = 0;
    for (size_t i = 0; i < len; ++i) {
      if ((support >> i) & 1) {
        sum += v[i];
        ++count;
      }
    }
    const double shift = (1.0 - sum) / count;
    std::vector<double> candidate(len, 0.0);
    bool feasible = true;
    double dist = 0.0;
    for (size_t i = 0; i < len; ++i) {
      if ((support >> i) & 1) {
        candidate[i] = v[i] + shift;
        if (candidate[i] < 0.0) {
          feasible = false;
          break;
        }
        dist += shift * shift;
      } else {
        dist += v[i] * v[i];
      }
    }
    if (feasible && dist < best_dist) {
      best_dist = dist;
      best = std::move(candidate);
    }
  }
  return best;
}

namespace {

struct Failure {
  bool failed = false;
  std::string message;

  void record(const std::string& msg) {
    if (!failed) {
      failed = true;
      message = msg;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

/// E == B and D == C at every recursion level of [[B, C], [D, E]].
bool is_recursive_block_circulant(const DenseMatrix& a, uint64_t r0, uint64_t c0,
                                  uint64_t size, double tol, double& worst) {
  if (size == 1) return true;
  const uint64_t h = size / 2;
  for (uint64_t r = 0; r < h; ++r) {
    for (uint64_t c = 0; c < h; ++c) {
      const double d1 = std::abs(a.at(r0 + r, c0 + c) - a.at(r0 + h + r, c0 + h + c));
      const double d2 = std::abs(a.at(r0 + r, c0 + h + c) - a.at(r0 + h + r, c0 + c));
      worst = std::max({worst, d1, d2});
      if (d1 > tol || d2 > tol) return false;
    }
  }
  return is_recursive_block_circulant(a, r0, c0, h, tol, worst) &&
         is_recursive_block_circulant(a, r0, c0 + h, h, tol, worst);
}

std::vector<double> random_distribution(std::mt19937_64& rng, size_t len) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(len);
  double total = 0.0;
  for (double& v : x) {
    v = expo(rng);
    total += v;
  }
  for (double& v : x) v /= total;
  return x;
}

}  // namespace

CheckResult check_assignment_structure(uint64_t seed, int channels_per_width) {
  constexpr double kTol = 1e-12;
  Failure fail;
  double worst = 0.0;
  int checked = 0;

  for (uint32_t n = 1; n <= 4 && !fail.failed; ++n) {
    const uint64_t dim = uint64_t{1} << n;
    const uint64_t n_paulis = uint64_t{1} << (2 * n);
    for (int i = 0; i < channels_per_width && !fail.failed; ++i) {
      std::mt19937_64 rng(derive_seed(seed, n * 1000 + i));
      const size_t terms =
          1 + std::uniform_int_distribution<size_t>(0, n_paulis - 1)(rng);
      const PauliChannel ch = random_pauli_channel(n, terms, derive_seed(seed, n * 7777 + i));
      const DenseMatrix a = brute_force_assignment(ch);
      ++checked;

      for (uint64_t r = 0; r < dim; ++r) {
        double row_sum = 0.0, col_sum = 0.0;
        for (uint64_t c = 0; c < dim; ++c) {
          row_sum += a.at(r, c);
          col_sum += a.at(c, r);
          worst = std::max(worst, std::abs(a.at(r, c) - a.at(c, r)));
          if (a.at(r, c) < -kTol) fail.record("negative assignment entry");
        }
        if (std::abs(row_sum - 1.0) > kTol || std::abs(col_sum - 1.0) > kTol) {
          fail.record("row/column sum deviates from 1 (n=" + std::to_string(n) + ")");
        }
      }
      if (worst > kTol) fail.record("asymmetry " + fmt(worst));

      for (uint64_t d = 0; d < dim && !fail.failed; ++d) {
        for (uint64_t r = 0; r < dim; ++r) {
          for (uint64_t c = 0; c < dim; ++c) {
            const double dev = std::abs(a.at(r, c) - a.at(r ^ d, c ^ d));
            worst = std::max(worst, dev);
            if (dev > kTol) {
              fail.record("XOR-shift invariance violated at displacement " +
                          std::to_string(d));
            }
          }
        }
      }

      if (!is_recursive_block_circulant(a, 0, 0, dim, kTol, worst)) {
        fail.record("recursive block-circulant structure violated (n=" + std::to_string(n) +
                    ")");
      }
    }
  }

  CheckResult result;
  result.name = "assignment-structure";
  result.pass = !fail.failed;
  result.detail = fail.failed ? fail.message
                              : std::to_string(checked) + " channels, max deviation " +
                                    fmt(worst);
  return result;
}

CheckResult check_fwht(uint64_t seed) {
  Failure fail;
  double worst = 0.0;
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  for (uint32_t t = 1; t <= 10 && !fail.failed; ++t) {
    const size_t len = size_t{1} << t;
    std::vector<double> v(len);
    for (double& x : v) x = unif(rng);

    const std::vector<double> naive = naive_hadamard_transform(v);
    const std::vector<double> fast = fwht_copy(v);
    for (size_t i = 0; i < len; ++i) {
      worst = std::max(worst, std::abs(naive[i] - fast[i]));
    }
    if (worst > 1e-10) fail.record("fwht deviates from the naive transform by " + fmt(worst));

    std::vector<double> round = fast;
    ifwht(round);
    double rt = 0.0;
    for (size_t i = 0; i < len; ++i) rt = std::max(rt, std::abs(round[i] - v[i]));
    if (rt > 1e-12) fail.record("fwht/ifwht round trip error " + fmt(rt));
  }

  if (!fail.failed) {
    const size_t len = size_t{1} << 16;
    std::vector<double> v(len);
    for (double& x : v) x = unif(rng);
    std::vector<double> round = v;
    fwht(round);
    ifwht(round);
    double rt = 0.0;
    for (size_t i = 0; i < len; ++i) rt = std::max(rt, std::abs(round[i] - v[i]));
    if (rt > 1e-12) fail.record("2^16 round trip error " + fmt(rt));
  }

  for (uint32_t t = 1; t <= 8 && !fail.failed; ++t) {
    const size_t len = size_t{1} << t;
    std::vector<double> a(len), b(len);
    for (double& x : a) x = unif(rng);
    for (double& x : b) x = unif(rng);
    const std::vector<double> conv = naive_xor_convolve(a, b);
    const std::vector<double> lhs = fwht_copy(conv);
    const std::vector<double> fa = fwht_copy(a);
    const std::vector<double> fb = fwht_copy(b);
    double dev = 0.0;
    for (size_t i = 0; i < len; ++i) dev = std::max(dev, std::abs(lhs[i] - fa[i] * fb[i]));
    worst = std::max(worst, dev);
    if (dev > 1e-10) fail.record("convolution theorem deviation " + fmt(dev));
  }

  CheckResult result;
  result.name = "fwht";
  result.pass = !fail.failed;
  result.detail = fail.failed ? fail.message : "max deviation " + fmt(worst);
  return result;
}

CheckResult check_projection(uint64_t seed) {
  Failure fail;
  double worst = 0.0;
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::uniform_int_distribution<size_t> len_pick(2, 5);

  for (int i = 0; i < 200 && !fail.failed; ++i) {
    const size_t len = len_pick(rng);
    std::vector<double> v(len);
    for (double& x : v) x = unif(rng);

    const std::vector<double> fast = project_to_simplex(v);
    const std::vector<double> oracle = brute_force_simplex_projection(v);
    double dev = 0.0;
    for (size_t j = 0; j < len; ++j) dev = std::max(dev, std::abs(fast[j] - oracle[j]));
    worst = std::max(worst, dev);
    if (dev > 1e-6) fail.record("projection deviates from the KKT oracle by " + fmt(dev));

    double sum = 0.0;
    for (double x : fast) {
      if (x < 0.0) fail.record("projection produced a negative entry");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) fail.record("projection sum " + fmt(sum));

    const std::vector<double> twice = project_to_simplex(fast);
    double idem = 0.0;
    for (size_t j = 0; j < len; ++j) idem = std::max(idem, std::abs(twice[j] - fast[j]));
    if (idem > 1e-12) fail.record("projection is not idempotent (" + fmt(idem) + ")");

    // The projection must be at least as close as any other simplex point.
    double proj_dist = 0.0;
    for (size_t j = 0; j < len; ++j) proj_dist += (fast[j] - v[j]) * (fast[j] - v[j]);
    for (int probe = 0; probe < 8; ++probe) {
      const std::vector<double> other = random_distribution(rng, len);
      double other_dist = 0.0;
      for (size_t j = 0; j < len; ++j) other_dist += (other[j] - v[j]) * (other[j] - v[j]);
      if (proj_dist > other_dist + 1e-12) {
        fail.record("a random simplex point beat the projection");
      }
    }
  }

  CheckResult result;
  result.name = "simplex-projection";
  result.pass = !fail.failed;
  result.detail = fail.failed ? fail.message : "max deviation " + fmt(worst);
  return result;
}

CheckResult check_exact_recovery(uint64_t seed) {
  Failure fail;
  double worst = 0.0;
  int recovered = 0, skipped = 0;

  for (uint32_t n = 1; n <= 6 && !fail.failed; ++n) {
    const uint64_t dim = uint64_t{1} << n;
    const uint64_t n_paulis = uint64_t{1} << (2 * n);
    for (int i = 0; i < 8 && !fail.failed; ++i) {
      std::mt19937_64 rng(derive_seed(seed, n * 31337 + i));
      const size_t terms =
          1 + std::uniform_int_distribution<size_t>(0, std::min<uint64_t>(n_paulis, 40) - 1)(rng);
      const PauliChannel ch =
          random_pauli_channel(n, terms, derive_seed(seed, n * 555 + i));
      const DenseMatrix a_mat = brute_force_assignment(ch);

      const std::vector<double> x = random_distribution(rng, dim);
      std::vector<double> z(dim, 0.0);
      for (uint64_t r = 0; r < dim; ++r) {
        for (uint64_t c = 0; c < dim; ++c) z[r] += a_mat.at(r, c) * x[c];
      }
      std::vector<double> a_col(dim);
      for (uint64_t r = 0; r < dim; ++r) a_col[r] = a_mat.at(r, 0);

      const std::vector<double> spectrum = fwht_copy(a_col);
      double min_spec = std::numeric_limits<double>::infinity();
      for (double s : spectrum) min_spec = std::min(min_spec, std::abs(s));
      if (min_spec <= 1e-12) {
        ++skipped;  // pseudo-inverse regime, exact recovery not promised
        continue;
      }

      const DeconvolveResult rec = deconvolve(z, a_col, 1e-12);
      double dev = 0.0;
      for (uint64_t j = 0; j < dim; ++j) dev = std::max(dev, std::abs(rec.x[j] - x[j]));
      worst = std::max(worst, dev);
      ++recovered;
      if (dev > 1e-9) {
        fail.record("recovery error " + fmt(dev) + " at n=" + std::to_string(n));
      }
    }
  }

  CheckResult result;
  result.name = "exact-recovery";
  result.pass = !fail.failed;
  result.detail = fail.failed ? fail.message
                              : std::to_string(recovered) + " recovered, " +
                                    std::to_string(skipped) + " singular skipped, max error " +
                                    fmt(worst);
  return result;
}

std::vector<CheckResult> run_all(uint64_t seed) {
  return {
      check_assignment_structure(seed),
      check_fwht(seed),
      check_projection(seed),
      check_exact_recovery(seed),
  };
}

}  // namespace decpauli::selfcheck

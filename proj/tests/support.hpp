#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "mcarma/model.hpp"
#include "mcarma/polynomial.hpp"

namespace mcarma::testing {

struct RandomModelOptions {
  int max_d = 3;
  int max_p = 3;
};

/// Stable model with P(z) = prod_i (I z + M_i), each M_i = c_i I + N_i with
/// the random part N_i scaled to spectral radius below c_i / 2. All zeros of
/// det P then have real part in [-3c/2, -c/2].
inline McarmaModel random_model(std::mt19937_64& rng, const RandomModelOptions& opts = {}) {
  std::uniform_int_distribution<int> dim(1, opts.max_d);
  std::uniform_int_distribution<int> order(1, opts.max_p);
  std::uniform_real_distribution<double> shift(0.4, 2.5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&](int d) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = gauss(rng);
    return m;
  };

  McarmaModel m;
  m.d = dim(rng);
  m.p = order(rng);
  m.q = std::uniform_int_distribution<int>(0, m.p - 1)(rng);
  const int d = m.d;

  MatrixPolynomial poly({Matrix::Identity(d, d)});
  for (int i = 0; i < m.p; ++i) {
    const double c = shift(rng);
    Matrix n = random_matrix(d);
    const double radius = n.eigenvalues().cwiseAbs().maxCoeff();
    if (radius > 0.0) n *= 0.45 * c / radius;
    poly = poly * MatrixPolynomial({c * Matrix::Identity(d, d) + n, Matrix::Identity(d, d)});
  }
  m.ar.clear();
  for (int i = 1; i <= m.p; ++i) m.ar.push_back(poly.coeffs()[static_cast<std::size_t>(m.p - i)]);

  m.ma.clear();
  m.ma.push_back(Matrix::Identity(d, d) + 0.3 * random_matrix(d));
  for (int j = 1; j <= m.q; ++j) m.ma.push_back(random_matrix(d));
  const Matrix l = random_matrix(d);
  m.sigma_l = l * l.transpose() + 0.1 * Matrix::Identity(d, d);
  return m;
}

inline std::vector<McarmaModel> random_models(int count, std::uint64_t seed, const RandomModelOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  std::vector<McarmaModel> out;
  for (int i = 0; i < count; ++i) out.push_back(random_model(rng, opts));
  return out;
}

template <class A, class B>
double rel_err(const Eigen::MatrixBase<A>& got, const Eigen::MatrixBase<B>& want) {
  return (got.eval() - want.eval()).norm() / std::max(want.norm(), 1e-300);
}

inline Matrix mat(int rows, int cols, std::initializer_list<double> values) {
  Matrix m(rows, cols);
  auto it = values.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = *it++;
  return m;
}

/// Largest distance in an optimal one-to-one matching of two equally sized
/// multisets (brute force over permutations; sizes stay tiny in tests).
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return 1e300;
  std::vector<std::size_t> perm(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  if (perm.size() > 9) {
    // greedy fallback for larger sets
    double worst = 0.0;
    for (const Complex& x : a) {
      auto best = std::min_element(b.begin(), b.end(),
                                   [&](Complex u, Complex v) { return std::abs(u - x) < std::abs(v - x); });
      worst = std::max(worst, std::abs(*best - x));
      b.erase(best);
    }
    return worst;
  }
  double best = 1e300;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<Complex> expand_roots(const RootSet& set) {
  std::vector<Complex> out;
  for (const auto& r : set.roots)
    for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.value);
  return out;
}

}  // namespace mcarma::testing

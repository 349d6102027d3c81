#pragma once

// Small helpers shared by the test binaries.

#include "koszul/smash.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace koszul::testing {

inline MatrixS int_matrix(std::size_t n, std::vector<long> v) {
  std::vector<Scalar> s(v.begin(), v.end());
  return MatrixS(n, n, std::move(s));
}

inline MatrixS permutation_matrix(std::vector<int> perm) {
  MatrixS m(perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m(static_cast<std::size_t>(perm[j]), j) = 1;
  return m;
}

inline int permutation_sign(std::vector<int> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

/// Alt(e_{i1},...,e_{ip}) (x) 1 in degree-p coordinates.
inline SparseVector alt(const TensorContext& ctx, std::vector<int> idx) {
  std::vector<int> perm(idx.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SparseVector::Entry> e;
  do {
    std::vector<int> w(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) w[k] = idx[perm[k]];
    e.emplace_back(ctx.index(ctx.word_index(w), 0), Scalar(permutation_sign(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return SparseVector(std::move(e));
}

inline SparseVector term(const TensorContext& ctx, std::vector<int> word, long c = 1, int g = 0) {
  return SparseVector::unit(ctx.index(ctx.word_index(word), g), Scalar(c));
}

inline SparseVector random_vector(std::mt19937& rng, std::size_t dim, int density, int range = 2) {
  std::uniform_int_distribution<int> keep(0, 99), val(-range, range);
  SparseVector v;
  for (std::size_t i = 0; i < dim; ++i)
    if (keep(rng) < density) v.push_back(i, Scalar(val(rng)));
  return v;
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace koszul::testing

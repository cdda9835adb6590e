#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cdc/ffield.hpp"

namespace testing {

inline cdc::MatrixBatch random_batch(const cdc::PrimeField& f, int count, Eigen::Index rows,
                                     Eigen::Index cols, std::mt19937_64& rng) {
  cdc::MatrixBatch b;
  for (int i = 0; i < count; ++i) b.push_back(f.random(rows, cols, rng));
  return b;
}

inline std::vector<cdc::Vector> random_vectors(const cdc::PrimeField& f, int count,
                                               Eigen::Index dim, std::mt19937_64& rng) {
  std::vector<cdc::Vector> b;
  for (int i = 0; i < count; ++i) b.push_back(f.random(dim, 1, rng).col(0));
  return b;
}

inline cdc::MatrixBatch direct_products(const cdc::MatrixBatch& a, const cdc::MatrixBatch& b) {
  cdc::MatrixBatch out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
  return out;
}

inline bool same(const cdc::Matrix& x, const cdc::Matrix& y) {
  return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
}

inline bool same(const cdc::MatrixBatch& x, const cdc::MatrixBatch& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!same(x[i], y[i])) return false;
  return true;
}

/// Calls fn on every k-subset of {0..n-1}, in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace testing

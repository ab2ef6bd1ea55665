#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "gq/base_coeff.hpp"

namespace gq {

// Dense array of base coefficients with row-major layout.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape);

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  std::size_t size() const { return data_.size(); }

  template <typename... I>
  BaseCoeff& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <typename... I>
  const BaseCoeff& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }
  BaseCoeff& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  const BaseCoeff& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }
  BaseCoeff& flat(std::size_t k) { return data_[k]; }
  const BaseCoeff& flat(std::size_t k) const { return data_[k]; }
  std::vector<int> unflatten(std::size_t k) const;

  bool is_zero() const;
  bool is_constant() const;
  Tensor operator-() const;
  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }
  Tensor scaled(const Q& c) const;
  Tensor partial(int i) const;

  std::vector<std::pair<std::vector<int>, BaseCoeff>> nonzero() const;
  // "0" when zero, otherwise "[i,j]=expr; ..." with 1-based indices.
  std::string str() const;

  // Deviation from total antisymmetry (or symmetry) over all index pairs.
  Tensor antisymmetry_defect() const;
  Tensor symmetry_defect() const;

 private:
  std::size_t offset(const std::vector<int>& idx) const;
  std::vector<int> shape_;
  std::vector<BaseCoeff> data_;
};

Tensor identity(int n);

// Exact inverse of a constant square matrix; throws if not constant or singular.
Tensor constant_inverse(const Tensor& m);

// Exact matrix product of two rank-2 tensors.
Tensor matmul(const Tensor& a, const Tensor& b);

struct SparseRow {
  std::vector<std::pair<int, Q>> entries;
};

// Exact Gaussian elimination for A u = b over the rationals. Returns one
// solution (free variables set to zero) or nullopt with the index of an
// inconsistent row in *bad_row.
struct LinearResult {
  bool feasible = false;
  std::vector<Q> solution;
  int bad_row = -1;
  int rank = 0;
};
LinearResult solve_linear(const std::vector<SparseRow>& rows, const std::vector<Q>& rhs, int nvars);

}  // namespace gq

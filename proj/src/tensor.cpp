#include "gq/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gq {

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
  std::size_t n = 1;
  for (int s : shape_) n *= static_cast<std::size_t>(s);
  data_.assign(n, BaseCoeff());
}

std::size_t Tensor::offset(const std::vector<int>& idx) const {
  if (idx.size() != shape_.size()) throw std::out_of_range("tensor rank mismatch");
  std::size_t off = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= shape_[k]) throw std::out_of_range("tensor index out of range");
    off = off * shape_[k] + idx[k];
  }
  return off;
}

std::vector<int> Tensor::unflatten(std::size_t k) const {
  std::vector<int> idx(shape_.size());
  for (std::size_t d = shape_.size(); d-- > 0;) {
    idx[d] = static_cast<int>(k % shape_[d]);
    k /= shape_[d];
  }
  return idx;
}

bool Tensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BaseCoeff& c) { return c.is_zero(); });
}

bool Tensor::is_constant() const {
  return std::all_of(data_.begin(), data_.end(), [](const BaseCoeff& c) { return c.is_constant(); });
}

Tensor Tensor::operator-() const {
  Tensor r = *this;
  for (auto& c : r.data_) c = -c;
  return r;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (o.shape_ != shape_) throw std::invalid_argument("tensor shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (o.shape_ != shape_) throw std::invalid_argument("tensor shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Tensor Tensor::scaled(const Q& c) const {
  Tensor r = *this;
  for (auto& v : r.data_) v *= c;
  return r;
}

Tensor Tensor::partial(int i) const {
  Tensor r = *this;
  for (auto& v : r.data_) v = v.partial(i);
  return r;
}

std::vector<std::pair<std::vector<int>, BaseCoeff>> Tensor::nonzero() const {
  std::vector<std::pair<std::vector<int>, BaseCoeff>> out;
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!data_[k].is_zero()) out.emplace_back(unflatten(k), data_[k]);
  return out;
}

std::string Tensor::str() const {
  auto nz = nonzero();
  if (nz.empty()) return "0";
  std::string s;
  for (auto& [idx, c] : nz) {
    if (!s.empty()) s += "; ";
    s += "[";
    for (std::size_t d = 0; d < idx.size(); ++d) {
      if (d) s += ",";
      s += std::to_string(idx[d] + 1);
    }
    s += "]=" + c.str();
  }
  return s;
}

namespace {

Tensor pair_defect(const Tensor& t, int sign) {
  Tensor r(t.shape());
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto idx = t.unflatten(k);
    for (int a = 0; a < t.rank(); ++a) {
      for (int b = a + 1; b < t.rank(); ++b) {
        if (t.shape()[a] != t.shape()[b]) continue;
        auto sw = idx;
        std::swap(sw[a], sw[b]);
        BaseCoeff d = sign > 0 ? t.flat(k) - t.at(sw) : t.flat(k) + t.at(sw);
        r.flat(k) += d;
      }
    }
  }
  return r;
}

}  // namespace

Tensor Tensor::antisymmetry_defect() const { return pair_defect(*this, -1); }
Tensor Tensor::symmetry_defect() const { return pair_defect(*this, 1); }

Tensor identity(int n) {
  Tensor r({n, n});
  for (int i = 0; i < n; ++i) r(i, i) = BaseCoeff(1);
  return r;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  int n = a.shape()[0], m = a.shape()[1], p = b.shape()[1];
  if (b.shape()[0] != m) throw std::invalid_argument("matmul shape mismatch");
  Tensor r({n, p});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < m; ++k) r(i, j) += a(i, k) * b(k, j);
  return r;
}

Tensor constant_inverse(const Tensor& m) {
  if (m.rank() != 2 || m.shape()[0] != m.shape()[1]) throw std::invalid_argument("matrix must be square");
  if (!m.is_constant()) throw std::invalid_argument("matrix must be constant");
  int n = m.shape()[0];
  std::vector<std::vector<Q>> a(n, std::vector<Q>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j).constant_term();
    a[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::invalid_argument("matrix is singular");
    std::swap(a[c], a[piv]);
    Q inv = 1 / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Q f = a[r][c];
      for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  Tensor r({n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = BaseCoeff(a[i][n + j]);
  return r;
}

LinearResult solve_linear(const std::vector<SparseRow>& rows, const std::vector<Q>& rhs, int nvars) {
  int m = static_cast<int>(rows.size());
  std::vector<std::vector<Q>> a(m, std::vector<Q>(nvars + 1));
  for (int r = 0; r < m; ++r) {
    for (auto& [j, v] : rows[r].entries) a[r][j] += v;
    a[r][nvars] = rhs[r];
  }
  std::vector<int> pivcol;
  int row = 0;
  for (int c = 0; c < nvars && row < m; ++c) {
    int piv = -1;
    for (int r = row; r < m; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    Q inv = 1 / a[row][c];
    for (int j = c; j <= nvars; ++j) a[row][j] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Q f = a[r][c];
      for (int j = c; j <= nvars; ++j) a[r][j] -= f * a[row][j];
    }
    pivcol.push_back(c);
    ++row;
  }
  LinearResult res;
  res.rank = row;
  for (int r = row; r < m; ++r) {
    if (a[r][nvars] != 0) {
      res.bad_row = r;
      return res;
    }
  }
  res.feasible = true;
  res.solution.assign(nvars, Q(0));
  for (int r = 0; r < row; ++r) res.solution[pivcol[r]] = a[r][nvars];
  return res;
}

}  // namespace gq

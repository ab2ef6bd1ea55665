#include "gq/geometry.hpp"

#include <stdexcept>

namespace gq {

Connection zero_connection(int n, int r) { return Tensor({r, r, n}); }

Tensor covariant_derivative_upper(const Connection& G, const Tensor& e) {
  int r = G.shape()[0], n = G.shape()[2];
  Tensor out({r, n});
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i) {
      BaseCoeff v = e(a).partial(i);
      for (int b = 0; b < r; ++b) v += G(a, b, i) * e(b);
      out(a, i) = v;
    }
  return out;
}

Tensor covariant_derivative_lower(const Connection& G, const Tensor& mu) {
  int r = G.shape()[0], n = G.shape()[2];
  Tensor out({n, r});
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < r; ++a) {
      BaseCoeff v = mu(a).partial(i);
      for (int b = 0; b < r; ++b) v -= G(b, a, i) * mu(b);
      out(i, a) = v;
    }
  return out;
}

Tensor curvature(const Connection& G) {
  int r = G.shape()[0], n = G.shape()[2];
  Tensor R({r, n, n, r});
  for (int b = 0; b < r; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < r; ++a) {
          BaseCoeff v = G(b, a, j).partial(i) - G(b, a, i).partial(j);
          for (int c = 0; c < r; ++c) v += G(c, a, j) * G(b, c, i) - G(c, a, i) * G(b, c, j);
          R(b, i, j, a) = v;
        }
  return R;
}

Tensor lowered_connection(const Connection& G, const Tensor& k) {
  int r = G.shape()[0], n = G.shape()[2];
  Tensor L({r, r, n});
  for (int b = 0; b < r; ++b)
    for (int c = 0; c < r; ++c)
      for (int i = 0; i < n; ++i)
        for (int d = 0; d < r; ++d) L(b, c, i) += G(d, b, i) * k(d, c);
  return L;
}

Tensor e_torsion(const CourantData& cd, const Connection& G) {
  int r = cd.r, n = cd.n;
  Tensor L = lowered_connection(G, cd.k);
  Tensor T = cd.f;
  auto term = [&](int a, int b, int c) {
    BaseCoeff s;
    for (int i = 0; i < n; ++i) s -= cd.rho(i, a) * L(b, c, i);
    return s;
  };
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) T(a, b, c) -= term(a, b, c) + term(b, c, a) + term(c, a, b);
  return T;
}

Tensor basic_curvature(const CourantData& cd, const Connection& G) {
  int r = cd.r, n = cd.n;
  Tensor T = e_torsion(cd, G);
  Tensor kinv = constant_inverse(cd.k);
  Tensor Tu({r, r, r});  // T^c_ab
  for (int c = 0; c < r; ++c)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int d = 0; d < r; ++d) Tu(c, a, b) += kinv(c, d) * T(d, a, b);
  Tensor R = curvature(G);
  Tensor S({r, n, r, r});
  for (int c = 0; c < r; ++c)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          BaseCoeff v = Tu(c, a, b).partial(j);
          for (int d = 0; d < r; ++d)
            v += G(c, d, j) * Tu(d, a, b) - G(d, a, j) * Tu(c, d, b) - G(d, b, j) * Tu(c, a, d);
          for (int i = 0; i < n; ++i) v += -cd.rho(i, a) * R(c, i, j, b) + cd.rho(i, b) * R(c, i, j, a);
          S(c, j, a, b) = v;
        }
  return S;
}

Tensor e_connection_on_metric(const CourantData& cd, const Connection& G, const Tensor& g) {
  int r = cd.r, n = cd.n;
  Tensor out({r, n, n});
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        BaseCoeff v;
        for (int k = 0; k < n; ++k) {
          v += cd.rho(k, a) * g(i, j).partial(k) - cd.rho(i, a).partial(k) * g(k, j) - cd.rho(j, a).partial(k) * g(i, k);
          for (int b = 0; b < r; ++b) v += g(i, k) * G(b, a, k) * cd.rho(j, b) + g(j, k) * G(b, a, k) * cd.rho(i, b);
        }
        out(a, i, j) = v;
      }
  return out;
}

Tensor exterior_d(const Tensor& form, int n) {
  int p = form.rank();
  std::vector<int> shape(p + 1, n);
  Tensor out(shape);
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto idx = out.unflatten(k);
    BaseCoeff v;
    for (int s = 0; s <= p; ++s) {
      std::vector<int> rest;
      for (int t = 0; t <= p; ++t)
        if (t != s) rest.push_back(idx[t]);
      BaseCoeff d = (p == 0 ? form.flat(0) : form.at(rest)).partial(idx[s]);
      if (s % 2) v -= d;
      else v += d;
    }
    out.flat(k) = v;
  }
  return out;
}

}  // namespace gq

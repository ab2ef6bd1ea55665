#pragma once

// Slow reference computations shared by the unit tests and the acceptance run.

#include "gq/bv_fhgd.hpp"
#include "gq/geometry.hpp"

namespace gq::oracle {

// Expand both monomials to words, concatenate, bubble sort with one adjacent
// swap at a time, then collapse.
inline GradedPoly naive_mul(const GradedPoly& a, const GradedPoly& b) {
  const Registry& reg = *a.reg();
  GradedPoly out(a.reg());
  for (auto& [ma, ca] : a.terms()) {
    for (auto& [mb, cb] : b.terms()) {
      std::vector<Gen> w;
      for (auto& f : ma)
        for (int k = 0; k < f.pow; ++k) w.push_back(f.g);
      for (auto& f : mb)
        for (int k = 0; k < f.pow; ++k) w.push_back(f.g);
      int sign = 1;
      bool swapped = true;
      while (swapped) {
        swapped = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
          if (w[i + 1] < w[i]) {
            if ((reg.kind(w[i].kind).degree & 1) && (reg.kind(w[i + 1].kind).degree & 1)) sign = -sign;
            std::swap(w[i], w[i + 1]);
            swapped = true;
          }
        }
      }
      bool dead = false;
      Mono m;
      for (auto& g : w) {
        if (!m.empty() && m.back().g == g) {
          if (reg.kind(g.kind).degree & 1) dead = true;
          m.back().pow++;
        } else {
          m.push_back(Factor{g, 1});
        }
      }
      if (dead) continue;
      BaseCoeff c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(m, c);
    }
  }
  return out;
}

// Component BV density for an untwisted model, transcribed term by term.
inline GradedPoly bv_density(const BvSpace& s, const BfvModel& m) {
  const CourantData& cd = m.cd;
  int n = cd.n, r = cd.r;
  auto c = [&](const BaseCoeff& v) { return s.constant(v); };
  Tensor L = lowered_connection(m.G, cd.k);
  GradedPoly hand = s.zero();
  for (int i = 0; i < n; ++i) hand += s.p(i) * s.xdot(i);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) hand += c(Q(1, 2) * cd.k(a, b)) * s.eta(a) * s.eta(b, 1);
  for (int a = 0; a < r; ++a) {
    hand += s.lam(a) * c(m.mu(a));
    for (int i = 0; i < n; ++i) {
      hand += s.lam(a) * c(cd.rho(i, a)) * s.p(i);
      hand += c(cd.rho(i, a)) * s.eta(a) * s.xs(i);
      hand += s.ps(i) * c(m.mu(a).partial(i)) * s.eta(a);
      for (int j = 0; j < n; ++j) hand += s.ps(i) * c(cd.rho(j, a).partial(i)) * s.eta(a) * s.p(j);
    }
  }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int d = 0; d < r; ++d) {
        hand -= c(Q(1, 2) * cd.f(a, b, d)) * s.lam(a) * s.eta(b) * s.eta(d);
        for (int i = 0; i < n; ++i)
          hand -= c(Q(1, 6) * cd.f(a, b, d).partial(i)) * s.ps(i) * s.eta(a) * s.eta(b) * s.eta(d);
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      hand -= c(Q(1, 2) * m.g(i, j)) * s.p(i) * s.p(j);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          hand -= c(Q(1, 2) * m.g(i, j) * L(a, b, i)) * s.p(j) * s.eta(a) * s.eta(b);
          for (int d = 0; d < r; ++d)
            for (int e = 0; e < r; ++e)
              hand -= c(Q(1, 8) * m.g(i, j) * L(a, b, i) * L(d, e, j)) * s.eta(a) * s.eta(b) * s.eta(d) * s.eta(e);
        }
    }
  hand -= c(m.Vp);
  for (std::size_t q = 0; q < m.U.size(); ++q) {
    if (m.U.flat(q).is_zero()) continue;
    auto idx = m.U.unflatten(q);
    hand -= c(Q(1, 24) * m.U.flat(q)) * s.eta(idx[0]) * s.eta(idx[1]) * s.eta(idx[2]) * s.eta(idx[3]);
  }
  return hand;
}

// (i, a): d_i mu_a - rho^j_a B_ji.
inline Tensor momentmap_h2(const CourantData& cd, const Tensor& B, const Tensor& mu) {
  Tensor out({cd.n, cd.r});
  for (int i = 0; i < cd.n; ++i)
    for (int a = 0; a < cd.r; ++a) {
      BaseCoeff v = mu(a).partial(i);
      for (int j = 0; j < cd.n; ++j) v -= cd.rho(j, a) * B(j, i);
      out(i, a) = v;
    }
  return out;
}

// (a, b): -rho^i_a d_i mu_b - k^{dc} f_cab mu_d.
inline Tensor equivariance(const CourantData& cd, const Tensor& mu) {
  Tensor kinv = constant_inverse(cd.k);
  Tensor out({cd.r, cd.r});
  for (int a = 0; a < cd.r; ++a)
    for (int b = 0; b < cd.r; ++b) {
      BaseCoeff v;
      for (int i = 0; i < cd.n; ++i) v -= cd.rho(i, a) * mu(b).partial(i);
      for (int d = 0; d < cd.r; ++d)
        for (int c = 0; c < cd.r; ++c) v -= kinv(d, c) * cd.f(c, a, b) * mu(d);
      out(a, b) = v;
    }
  return out;
}

// (i, j, k, l): alternating sum of derivatives of a 3-form.
inline Tensor exterior_d3(const Tensor& h, int n) {
  Tensor out({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = h(j, k, l).partial(i) - h(i, k, l).partial(j) + h(i, j, l).partial(k) -
                            h(i, j, k).partial(l);
  return out;
}

// (a, i, j): Lie derivative of g^{ij} along rho_a plus the connection terms.
inline Tensor e_d_metric(const CourantData& cd, const Connection& G, const Tensor& g) {
  int n = cd.n, r = cd.r;
  Tensor out({r, n, n});
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        BaseCoeff v;
        for (int k = 0; k < n; ++k) {
          v += cd.rho(k, a) * g(i, j).partial(k) - g(k, j) * cd.rho(i, a).partial(k) -
               g(i, k) * cd.rho(j, a).partial(k);
          for (int b = 0; b < r; ++b) v += G(b, a, k) * (g(i, k) * cd.rho(j, b) + g(j, k) * cd.rho(i, b));
        }
        out(a, i, j) = v;
      }
  return out;
}

}  // namespace gq::oracle

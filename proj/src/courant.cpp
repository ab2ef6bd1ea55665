#include "gq/courant.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gq {

namespace {

// Factor c in [e,e]_D = c D<e,e> with <Df, e> = 1/2 rho(e) f.
const Q kSymmetricFactor(1);

}  // namespace

void validate(const CourantData& cd) {
  if (cd.k.shape() != std::vector<int>{cd.r, cd.r}) throw std::invalid_argument("k must have shape (r, r)");
  if (cd.rho.shape() != std::vector<int>{cd.n, cd.r}) throw std::invalid_argument("rho must have shape (n, r)");
  if (cd.f.shape() != std::vector<int>{cd.r, cd.r, cd.r}) throw std::invalid_argument("f must have shape (r, r, r)");
  if (!cd.k.symmetry_defect().is_zero()) throw std::invalid_argument("k must be symmetric");
  if (!cd.f.antisymmetry_defect().is_zero()) throw std::invalid_argument("f must be totally antisymmetric");
}

CourantData zero_courant(int n, int r, const Tensor& k) {
  return CourantData{n, r, k, Tensor({n, r}), Tensor({r, r, r})};
}

PhaseSpace make_phase_space(const CourantData& cd, std::optional<Tensor> twist) {
  validate(cd);
  return PhaseSpace(phase_registry(cd.n), PhaseKinds{}, cd.n, cd.r, cd.k, std::move(twist));
}

CourantResiduals courant_residuals(const CourantData& cd) {
  validate(cd);
  int n = cd.n, r = cd.r;
  Tensor kinv = constant_inverse(cd.k);
  CourantResiduals res{Tensor({n, n}), Tensor({n, r, r}), Tensor({r, r, r, r})};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          if (kinv(a, b).is_zero()) continue;
          res.i(i, j) += kinv(a, b) * cd.rho(i, a) * cd.rho(j, b);
        }
  // rho_a acting on a base function
  auto act = [&](int a, const BaseCoeff& fn) {
    BaseCoeff s;
    for (int j = 0; j < n; ++j)
      if (!cd.rho(j, a).is_zero()) s += cd.rho(j, a) * fn.partial(j);
    return s;
  };
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        BaseCoeff v = act(b, cd.rho(i, a)) - act(a, cd.rho(i, b));
        for (int e = 0; e < r; ++e)
          for (int f = 0; f < r; ++f)
            if (!kinv(e, f).is_zero()) v -= kinv(e, f) * cd.rho(i, e) * cd.f(f, a, b);
        res.ii(i, a, b) = v;
      }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int d = 0; d < r; ++d) {
          BaseCoeff v = act(d, cd.f(a, b, c)) - act(a, cd.f(b, c, d)) + act(b, cd.f(c, d, a)) - act(c, cd.f(d, a, b));
          for (int e = 0; e < r; ++e)
            for (int f = 0; f < r; ++f) {
              if (kinv(e, f).is_zero()) continue;
              v -= kinv(e, f) * (cd.f(e, a, b) * cd.f(c, d, f) + cd.f(e, a, c) * cd.f(d, b, f) +
                                 cd.f(e, a, d) * cd.f(b, c, f));
            }
          res.iii(a, b, c, d) = v;
        }
  return res;
}

CheckRecord verify_courant_axioms(const CourantData& cd) {
  auto res = courant_residuals(cd);
  CheckRecord rec;
  rec.check = "courant_axioms";
  rec.anchor = "local Courant identities (i)-(iii)";
  rec.add("identity_i", res.i).add("identity_ii", res.ii).add("identity_iii", res.iii);
  rec.verdict = res.courant() ? "Courant" : "not Courant";
  return rec;
}

GradedPoly build_theta(const PhaseSpace& ps, const CourantData& cd) {
  GradedPoly t = ps.zero();
  for (int a = 0; a < cd.r; ++a)
    for (int i = 0; i < cd.n; ++i)
      if (!cd.rho(i, a).is_zero()) t += ps.constant(cd.rho(i, a)) * ps.eta(a) * ps.p(i);
  for (int a = 0; a < cd.r; ++a)
    for (int b = 0; b < cd.r; ++b)
      for (int c = 0; c < cd.r; ++c)
        if (!cd.f(a, b, c).is_zero()) t -= ps.constant(cd.f(a, b, c) * BaseCoeff(Q(1, 6))) * ps.eta(a) * ps.eta(b) * ps.eta(c);
  return t;
}

GradedPoly e_differential(const PhaseSpace& ps, const GradedPoly& theta, const GradedPoly& f) {
  return ps.bracket(theta, f);
}

Dorfman::Dorfman(PhaseSpace ps, GradedPoly theta) : ps_(std::move(ps)), theta_(std::move(theta)) {}

GradedPoly Dorfman::embed(const Tensor& e) const {
  GradedPoly s = ps_.zero();
  for (int a = 0; a < ps_.r(); ++a)
    for (int b = 0; b < ps_.r(); ++b)
      if (!ps_.k()(a, b).is_zero() && !e(a).is_zero()) s += ps_.constant(e(a) * ps_.k()(a, b)) * ps_.eta(b);
  return s;
}

Tensor Dorfman::extract(const GradedPoly& f) const {
  Tensor e({ps_.r()});
  for (auto& [m, c] : f.terms()) {
    if (m.size() != 1 || m[0].g.kind != ps_.kinds().eta || m[0].pow != 1)
      throw std::invalid_argument("not a section: " + f.str());
    int b = m[0].g.i;
    for (int a = 0; a < ps_.r(); ++a) e(a) += ps_.k_inv()(a, b) * c;
  }
  return e;
}

Tensor Dorfman::bracket(const Tensor& e1, const Tensor& e2) const {
  return extract(ps_.bracket(ps_.bracket(embed(e1), theta_), embed(e2)));
}

BaseCoeff Dorfman::anchor_apply(const Tensor& e, const BaseCoeff& f) const {
  GradedPoly v = ps_.bracket(ps_.bracket(embed(e), theta_), ps_.constant(f));
  if (v.is_zero()) return BaseCoeff();
  if (v.terms().size() != 1 || !v.terms().begin()->first.empty())
    throw std::logic_error("anchor produced a non-function");
  return v.terms().begin()->second;
}

Tensor Dorfman::anchor(const Tensor& e) const {
  Tensor v({ps_.n()});
  for (int i = 0; i < ps_.n(); ++i) v(i) = anchor_apply(e, BaseCoeff::var(i));
  return v;
}

BaseCoeff Dorfman::pairing(const Tensor& e1, const Tensor& e2) const {
  BaseCoeff s;
  for (int a = 0; a < ps_.r(); ++a)
    for (int b = 0; b < ps_.r(); ++b)
      if (!ps_.k()(a, b).is_zero()) s += e1(a) * ps_.k()(a, b) * e2(b);
  return s;
}

Tensor Dorfman::gen_derivative(const BaseCoeff& f) const {
  // <Df, e_b> = (Df)^a k_ab = 1/2 rho(e_b) f
  int r = ps_.r();
  Tensor rhs({r});
  for (int b = 0; b < r; ++b) {
    Tensor eb({r});
    eb(b) = BaseCoeff(1);
    rhs(b) = anchor_apply(eb, f) * BaseCoeff(Q(1, 2));
  }
  Tensor out({r});
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) out(a) += ps_.k_inv()(a, b) * rhs(b);
  return out;
}

DorfmanAxioms dorfman_axioms(const Dorfman& d, const Tensor& e1, const Tensor& e2, const Tensor& e3,
                             const BaseCoeff& fn) {
  int n = d.ps().n(), r = d.ps().r();
  DorfmanAxioms ax;
  ax.leibniz = d.bracket(e1, d.bracket(e2, e3)) - d.bracket(d.bracket(e1, e2), e3) - d.bracket(e2, d.bracket(e1, e3));

  Tensor v1 = d.anchor(e1), v2 = d.anchor(e2), v12 = d.anchor(d.bracket(e1, e2));
  ax.anchor_hom = Tensor({n});
  for (int i = 0; i < n; ++i) {
    BaseCoeff lie;
    for (int j = 0; j < n; ++j) lie += v1(j) * v2(i).partial(j) - v2(j) * v1(i).partial(j);
    ax.anchor_hom(i) = v12(i) - lie;
  }

  Tensor fe2({r});
  for (int a = 0; a < r; ++a) fe2(a) = fn * e2(a);
  Tensor b12 = d.bracket(e1, e2);
  ax.anchor_leibniz = d.bracket(e1, fe2);
  BaseCoeff rf = d.anchor_apply(e1, fn);
  for (int a = 0; a < r; ++a) ax.anchor_leibniz(a) -= fn * b12(a) + rf * e2(a);

  ax.symmetric_part = d.bracket(e1, e1) - d.gen_derivative(d.pairing(e1, e1)).scaled(kSymmetricFactor);

  ax.invariance = Tensor({1});
  ax.invariance(0) = d.anchor_apply(e1, d.pairing(e2, e3)) - d.pairing(d.bracket(e1, e2), e3) -
                     d.pairing(e2, d.bracket(e1, e3));
  return ax;
}

CourantData standard_courant(int n, const Tensor& h) {
  if (h.shape() != std::vector<int>{n, n, n}) throw std::invalid_argument("h must have shape (n, n, n)");
  if (!h.antisymmetry_defect().is_zero()) throw std::invalid_argument("h must be totally antisymmetric");
  int r = 2 * n;
  CourantData cd{n, r, Tensor({r, r}), Tensor({n, r}), Tensor({r, r, r})};
  for (int i = 0; i < n; ++i) {
    cd.k(i, n + i) = cd.k(n + i, i) = BaseCoeff(1);
    cd.rho(i, i) = BaseCoeff(1);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) cd.f(i, j, l) = h(i, j, l);
  return cd;
}

CourantData action_algebroid(const Tensor& C, const Tensor& inner, const Tensor& rho) {
  int r = inner.shape()[0];
  int n = rho.shape()[0];
  if (C.shape() != std::vector<int>{r, r, r}) throw std::invalid_argument("structure constants must be (r, r, r)");
  if (!C.is_constant() || !inner.is_constant()) throw std::invalid_argument("structure constants and metric must be constant");
  if (!inner.symmetry_defect().is_zero()) throw std::invalid_argument("inner product must be symmetric");
  try {
    constant_inverse(inner);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("inner product is degenerate");
  }
  for (int c = 0; c < r; ++c)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        if (!(C(c, a, b) + C(c, b, a)).is_zero()) throw std::invalid_argument("structure constants not antisymmetric");
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int e = 0; e < r; ++e) {
          BaseCoeff s;
          for (int d = 0; d < r; ++d)
            s += C(d, a, b) * C(e, d, c) + C(d, b, c) * C(e, d, a) + C(d, c, a) * C(e, d, b);
          if (!s.is_zero()) throw std::invalid_argument("structure constants violate Jacobi");
        }
  CourantData cd{n, r, inner, rho, Tensor({r, r, r})};
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int d = 0; d < r; ++d) cd.f(a, b, c) += inner(c, d) * C(d, a, b);
  if (!cd.f.antisymmetry_defect().is_zero()) throw std::invalid_argument("inner product is not ad-invariant");
  return cd;
}

Tensor levi_civita(int dim) {
  std::vector<int> shape(dim, dim);
  Tensor e(shape);
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inv = 0;
    for (int a = 0; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b)
        if (perm[a] > perm[b]) ++inv;
    e.at(perm) = BaseCoeff(inv % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return e;
}

}  // namespace gq

#include "gq/momentum.hpp"

namespace gq {

Tensor gamma_from(const CourantData& cd, const Tensor& B) {
  Tensor g({cd.n, cd.r});
  for (int i = 0; i < cd.n; ++i)
    for (int a = 0; a < cd.r; ++a)
      for (int j = 0; j < cd.n; ++j) g(i, a) -= B(i, j) * cd.rho(j, a);
  return g;
}

Tensor h2_residual(const CourantData& cd, const Connection& G, const Tensor& B, const Tensor& mu) {
  return covariant_derivative_lower(G, mu) - gamma_from(cd, B);
}

EdMu e_d_mu(const CourantData& cd, const Tensor& mu) {
  PhaseSpace ps = make_phase_space(cd);
  GradedPoly m = ps.zero();
  for (int a = 0; a < cd.r; ++a) m += ps.constant(mu(a)) * ps.eta(a);
  GradedPoly d = ps.bracket(build_theta(ps, cd), m);
  EdMu out{Tensor({cd.r, cd.r}), Tensor({cd.n})};
  for (auto& [mono, c] : d.terms()) {
    if (mono.size() == 1 && mono[0].g.kind == ps.kinds().p) {
      out.p_part(mono[0].g.i) = c;
    } else if (mono.size() == 2 && mono[0].g.kind == ps.kinds().eta && mono[1].g.kind == ps.kinds().eta) {
      int a = mono[0].g.i, b = mono[1].g.i;
      out.eta2(a, b) = c;
      out.eta2(b, a) = -c;
    } else {
      throw std::logic_error("unexpected component in E d mu: " + d.str());
    }
  }
  return out;
}

Tensor h3_residual(const CourantData& cd, const Tensor& B, const Tensor& mu) {
  Tensor res = e_d_mu(cd, mu).eta2;
  for (int a = 0; a < cd.r; ++a)
    for (int b = 0; b < cd.r; ++b)
      for (int i = 0; i < cd.n; ++i)
        for (int j = 0; j < cd.n; ++j) res(a, b) -= cd.rho(i, a) * cd.rho(j, b) * B(i, j);
  return res;
}

namespace {

Tensor d_gamma(const CourantData& cd, const Connection& G, const Tensor& B) {
  Tensor g = gamma_from(cd, B);
  Tensor out({cd.n, cd.n, cd.r});
  for (int i = 0; i < cd.n; ++i)
    for (int j = 0; j < cd.n; ++j)
      for (int a = 0; a < cd.r; ++a) {
        BaseCoeff v = g(j, a).partial(i);
        for (int b = 0; b < cd.r; ++b) v -= G(b, a, i) * g(j, b);
        out(i, j, a) = v;
      }
  return out;
}

}  // namespace

Tensor h1_residual(const CourantData& cd, const Connection& G, const Tensor& B) {
  Tensor d = d_gamma(cd, G, B);
  Tensor out(d.shape());
  for (int i = 0; i < cd.n; ++i)
    for (int j = 0; j < cd.n; ++j)
      for (int a = 0; a < cd.r; ++a) out(i, j, a) = d(i, j, a) - d(j, i, a);
  return out;
}

Tensor h1_symmetric(const CourantData& cd, const Connection& G, const Tensor& B) {
  Tensor d = d_gamma(cd, G, B);
  Tensor out(d.shape());
  for (int i = 0; i < cd.n; ++i)
    for (int j = 0; j < cd.n; ++j)
      for (int a = 0; a < cd.r; ++a) out(i, j, a) = d(i, j, a) + d(j, i, a);
  return out;
}

Tensor momentmap_h2(const CourantData& cd, const Tensor& B, const Tensor& mu) {
  Tensor out({cd.n, cd.r});
  for (int i = 0; i < cd.n; ++i)
    for (int a = 0; a < cd.r; ++a) {
      BaseCoeff v = mu(a).partial(i);
      for (int j = 0; j < cd.n; ++j) v -= cd.rho(j, a) * B(j, i);
      out(i, a) = v;
    }
  return out;
}

Tensor momentmap_equivariance(const CourantData& cd, const Tensor& mu) {
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

Classification classify(const CourantData& cd, const Connection& G, const Tensor& B, const Tensor& mu) {
  Classification c;
  bool h2 = h2_residual(cd, G, B, mu).is_zero();
  bool h3 = h3_residual(cd, B, mu).is_zero();
  c.cls = !h2 ? MomentumClass::None : h3 ? MomentumClass::Hamiltonian : MomentumClass::WeaklyHamiltonian;
  c.presymplectically_anchored = h1_residual(cd, G, B).is_zero();
  return c;
}

std::string to_string(MomentumClass c) {
  switch (c) {
    case MomentumClass::None: return "none";
    case MomentumClass::WeaklyHamiltonian: return "weakly-Hamiltonian";
    case MomentumClass::Hamiltonian: return "Hamiltonian";
  }
  return "none";
}

CheckRecord check_h1(const CourantData& cd, const Connection& G, const Tensor& B) {
  CheckRecord rec;
  rec.check = "H1";
  rec.anchor = "presymplectic anchoring D gamma = 0";
  rec.add("antisymmetric_part", h1_residual(cd, G, B), true);
  rec.add("symmetric_part", h1_symmetric(cd, G, B), true);
  rec.verdict = h1_residual(cd, G, B).is_zero() ? "presymplectically anchored" : "not presymplectically anchored";
  return rec;
}

CheckRecord check_h2(const CourantData& cd, const Connection& G, const Tensor& B, const Tensor& mu) {
  CheckRecord rec;
  rec.check = "H2";
  rec.anchor = "D mu = gamma";
  rec.add("D_mu_minus_gamma", h2_residual(cd, G, B, mu));
  return rec;
}

CheckRecord check_h3(const CourantData& cd, const Tensor& B, const Tensor& mu) {
  CheckRecord rec;
  rec.check = "H3";
  rec.anchor = "E d mu (e1, e2) = -<gamma(rho e1), e2>";
  rec.add("eta_eta_part", h3_residual(cd, B, mu));
  rec.add("p_part_rho_mu_star", e_d_mu(cd, mu).p_part, true);
  return rec;
}

}  // namespace gq

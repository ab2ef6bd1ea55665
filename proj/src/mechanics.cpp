#include "gq/mechanics.hpp"

#include <stdexcept>

namespace gq {

MechanicsData zero_mechanics(int n, int r) {
  return MechanicsData{Tensor({r}), Tensor({n, n}), Tensor({n}), BaseCoeff(), std::nullopt};
}

Absorbed absorb_beta(const CourantData& cd, const MechanicsData& mech) {
  int n = cd.n;
  Absorbed out{Tensor({n}), mech.V, mech.alpha, Tensor({n, n})};
  if (mech.beta.is_zero()) return out;
  if (!mech.g_lower) throw std::invalid_argument("beta != 0 requires the inverse metric g_ij (block g_inv)");
  const Tensor& gl = *mech.g_lower;
  if (!(matmul(gl, mech.g) == identity(n)))
    throw std::invalid_argument("g_inv is not the exact inverse of g over the polynomial ring");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.A(i) += gl(i, j) * mech.beta(j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.V -= Q(1, 2) * mech.g(i, j) * out.A(i) * out.A(j);
  for (int a = 0; a < cd.r; ++a)
    for (int i = 0; i < n; ++i) out.mu(a) -= cd.rho(i, a) * out.A(i);
  out.B = exterior_d(out.A, n);
  return out;
}

bool BracketResidual::is_zero() const {
  for (auto& r : residual)
    if (!r.is_zero()) return false;
  return true;
}

PhaseSpace mechanics_phase_space(const CourantData& cd, const Absorbed& ab) {
  return make_phase_space(cd, ab.B.is_zero() ? std::nullopt : std::optional<Tensor>(ab.B));
}

std::vector<GradedPoly> constraints(const PhaseSpace& ps, const CourantData& cd, const Tensor& mu) {
  std::vector<GradedPoly> G;
  for (int a = 0; a < cd.r; ++a) {
    GradedPoly g = ps.constant(mu(a));
    for (int i = 0; i < cd.n; ++i) g += ps.constant(cd.rho(i, a)) * ps.p(i);
    G.push_back(g);
  }
  return G;
}

GradedPoly mechanics_hamiltonian(const PhaseSpace& ps, const Tensor& g, const BaseCoeff& Vp) {
  GradedPoly h = ps.constant(Vp);
  for (int i = 0; i < ps.n(); ++i)
    for (int j = 0; j < ps.n(); ++j) h += ps.constant(Q(1, 2) * g(i, j)) * ps.p(i) * ps.p(j);
  return h;
}

namespace {

Tensor structure_constants(const CourantData& cd) {
  Tensor kinv = constant_inverse(cd.k);
  Tensor C({cd.r, cd.r, cd.r});  // C(d, a, b) = k^{dc} f_cab
  for (int d = 0; d < cd.r; ++d)
    for (int a = 0; a < cd.r; ++a)
      for (int b = 0; b < cd.r; ++b)
        for (int c = 0; c < cd.r; ++c) C(d, a, b) += kinv(d, c) * cd.f(c, a, b);
  return C;
}

struct Orders {
  BaseCoeff o0;
  std::vector<BaseCoeff> o1;
  std::vector<std::vector<BaseCoeff>> o2;
};

// Split a function of (x, p) by momentum degree, up to degree 2.
Orders split(const PhaseSpace& ps, const GradedPoly& f) {
  int n = ps.n();
  Orders o{BaseCoeff(), std::vector<BaseCoeff>(n), std::vector<std::vector<BaseCoeff>>(n, std::vector<BaseCoeff>(n))};
  for (auto& [m, c] : f.terms()) {
    if (GradedPoly::count(m, ps.kinds().eta) != 0)
      throw std::logic_error("ghost-dependent term in a mechanics residual: " + f.str());
    int deg = GradedPoly::count(m, ps.kinds().p);
    if (deg == 0) {
      o.o0 = c;
    } else if (deg == 1) {
      o.o1[m[0].g.i] = c;
    } else if (deg == 2) {
      if (m.size() == 1) {
        o.o2[m[0].g.i][m[0].g.i] = c * Q(2);
      } else {
        o.o2[m[0].g.i][m[1].g.i] = c;
        o.o2[m[1].g.i][m[0].g.i] = c;
      }
    } else {
      throw std::logic_error("momentum order above 2 in a mechanics residual: " + f.str());
    }
  }
  return o;
}

}  // namespace

BracketResidual first_class_residual(const CourantData& cd, const MechanicsData& mech) {
  Absorbed ab = absorb_beta(cd, mech);
  PhaseSpace ps = mechanics_phase_space(cd, ab);
  auto G = constraints(ps, cd, ab.mu);
  Tensor C = structure_constants(cd);
  int r = cd.r, n = cd.n;
  BracketResidual out;
  out.by_p_order = {Tensor({r, r}), Tensor({r, r, n})};
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      GradedPoly res = ps.bracket(G[a], G[b]);
      for (int d = 0; d < r; ++d) res -= ps.constant(C(d, a, b)) * G[d];
      Orders o = split(ps, res);
      for (auto& row : o.o2)
        for (auto& v : row)
          if (!v.is_zero()) throw std::logic_error("first-class residual has momentum order 2");
      out.by_p_order[0](a, b) = o.o0;
      out.by_p_order[0](b, a) = -o.o0;
      for (int i = 0; i < n; ++i) {
        out.by_p_order[1](a, b, i) = o.o1[i];
        out.by_p_order[1](b, a, i) = -o.o1[i];
      }
      out.residual.push_back(res);
    }
  return out;
}

std::vector<GradedPoly> first_class_residual_unprimed(const CourantData& cd, const MechanicsData& mech) {
  PhaseSpace ps = make_phase_space(cd);
  auto G = constraints(ps, cd, mech.alpha);
  Tensor C = structure_constants(cd);
  std::vector<GradedPoly> out;
  for (int a = 0; a < cd.r; ++a)
    for (int b = a + 1; b < cd.r; ++b) {
      GradedPoly res = ps.bracket(G[a], G[b]);
      for (int d = 0; d < cd.r; ++d) res -= ps.constant(C(d, a, b)) * G[d];
      out.push_back(res);
    }
  return out;
}

GradedPoly to_primed(const PhaseSpace& ps, const GradedPoly& f, const Tensor& A) {
  return substitute(f, ps.reg(), [&](const Gen& g) -> std::optional<GradedPoly> {
    if (g.kind != ps.kinds().p) return std::nullopt;
    return ps.p(g.i) - ps.constant(A(g.i));
  });
}

std::vector<GradedPoly> realized_jacobi(const CourantData& cd, const MechanicsData& mech) {
  Absorbed ab = absorb_beta(cd, mech);
  PhaseSpace ps = mechanics_phase_space(cd, ab);
  auto G = constraints(ps, cd, ab.mu);
  Tensor C = structure_constants(cd);
  int r = cd.r;
  auto rel = [&](int b, int c) {
    GradedPoly s = ps.zero();
    for (int d = 0; d < r; ++d) s += ps.constant(C(d, b, c)) * G[d];
    return s;
  };
  std::vector<GradedPoly> out;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int c = b + 1; c < r; ++c)
        out.push_back(ps.bracket(G[a], rel(b, c)) + ps.bracket(G[b], rel(c, a)) + ps.bracket(G[c], rel(a, b)));
  return out;
}

BracketResidual symmetry_residual(const CourantData& cd, const Connection& Gm, const MechanicsData& mech) {
  Absorbed ab = absorb_beta(cd, mech);
  PhaseSpace ps = mechanics_phase_space(cd, ab);
  auto G = constraints(ps, cd, ab.mu);
  GradedPoly H = mechanics_hamiltonian(ps, mech.g, ab.V);
  int r = cd.r, n = cd.n;
  BracketResidual out;
  out.by_p_order = {Tensor({r}), Tensor({r, n}), Tensor({r, n, n})};
  for (int a = 0; a < r; ++a) {
    GradedPoly res = ps.bracket(H, G[a]);
    for (int b = 0; b < r; ++b)
      for (int i = 0; i < n; ++i) {
        BaseCoeff s;
        for (int j = 0; j < n; ++j) s += mech.g(i, j) * Gm(b, a, j);
        if (!s.is_zero()) res += ps.constant(s) * ps.p(i) * G[b];
      }
    Orders o = split(ps, res);
    out.by_p_order[0](a) = o.o0;
    for (int i = 0; i < n; ++i) {
      out.by_p_order[1](a, i) = o.o1[i];
      for (int j = 0; j < n; ++j) out.by_p_order[2](a, i, j) = o.o2[i][j];
    }
    out.residual.push_back(res);
  }
  return out;
}

Tensor e_d_potential(const CourantData& cd, const BaseCoeff& V) {
  PhaseSpace ps = make_phase_space(cd);
  GradedPoly q = e_differential(ps, build_theta(ps, cd), ps.constant(V));
  Tensor out({cd.r});
  for (int a = 0; a < cd.r; ++a) out(a) = -q.coeff(Mono{Factor{Gen{static_cast<std::int16_t>(ps.kinds().eta),
                                                                  static_cast<std::int16_t>(a), 0},
                                                              1}});
  return out;
}

Tensor raise_h2(const Tensor& g, const Tensor& h2) {
  int n = h2.shape()[0], r = h2.shape()[1];
  Tensor out({r, n});
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(a, i) -= g(i, j) * h2(j, a);
  return out;
}

Tensor tau_from_beta(const Connection& G, const Tensor& beta) {
  int r = G.shape()[0], n = G.shape()[2];
  Tensor t({r, r});
  for (int b = 0; b < r; ++b)
    for (int a = 0; a < r; ++a)
      for (int j = 0; j < n; ++j) t(b, a) += beta(j) * G(b, a, j);
  return t;
}

Tensor tau_from_A(const Connection& G, const Tensor& g, const Tensor& A) {
  int r = G.shape()[0], n = G.shape()[2];
  Tensor t({r, r});
  for (int b = 0; b < r; ++b)
    for (int a = 0; a < r; ++a)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t(b, a) += g(i, j) * G(b, a, j) * A(i);
  return t;
}

Report full_consistency(const CourantData& cd, const Connection& G, const MechanicsData& mech) {
  Report rep;
  Absorbed ab = absorb_beta(cd, mech);

  CheckRecord abs;
  abs.check = "absorb_beta";
  abs.anchor = "p' = p + A, A = g(beta)";
  abs.note("A", ab.A.str()).note("V_prime", ab.V.str()).note("mu", ab.mu.str()).note("B", ab.B.str());
  abs.add("tau_beta_minus_tau_A", tau_from_beta(G, mech.beta) - tau_from_A(G, mech.g, ab.A));
  rep.records.push_back(abs);

  auto fc = first_class_residual(cd, mech);
  CheckRecord first;
  first.check = "first_class";
  first.anchor = "{G_a,G_b} = k^{cd} f_cab G_d";
  first.add("order0", fc.by_p_order[0]).add("order1", fc.by_p_order[1]);
  rep.records.push_back(first);

  auto sym = symmetry_residual(cd, G, mech);
  CheckRecord s;
  s.check = "symmetry";
  s.anchor = "{H,G_a} = -g^{ij} Gamma^b_aj p'_i G_b";
  s.add("order2_EDg", sym.by_p_order[2]).add("order1_Dmu_minus_gamma", sym.by_p_order[1]);
  s.add("order0_EdV", sym.by_p_order[0]);
  rep.records.push_back(s);

  rep.records.push_back(check_h2(cd, G, ab.B, ab.mu));
  rep.records.push_back(check_h3(cd, ab.B, ab.mu));
  return rep;
}

}  // namespace gq

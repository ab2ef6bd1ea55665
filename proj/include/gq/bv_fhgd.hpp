#pragma once

#include "gq/bfv.hpp"

namespace gq {

// Fields on the line and their t-derivatives. A generator Gen{kind, i, j}
// stands for the j-th derivative; x itself is the base coordinate, so the
// kind x only occurs with j >= 1. theta is the odd super time.
struct BvKinds {
  int x = 0, p = 1, eta = 2, xs = 3, ps = 4, lam = 5, theta = 6;
};

struct BvSpace {
  int n = 0, r = 0;
  Tensor k;  // constant k_ab
  Tensor kinv;
  RegPtr reg;
  BvKinds kinds;

  GradedPoly field(int kind, int i, int j = 0) const;
  GradedPoly xdot(int i) const { return field(kinds.x, i, 1); }
  GradedPoly p(int i, int j = 0) const { return field(kinds.p, i, j); }
  GradedPoly eta(int a, int j = 0) const { return field(kinds.eta, a, j); }
  GradedPoly xs(int i, int j = 0) const { return field(kinds.xs, i, j); }
  GradedPoly ps(int i, int j = 0) const { return field(kinds.ps, i, j); }
  GradedPoly lam(int a, int j = 0) const { return field(kinds.lam, a, j); }
  GradedPoly theta() const { return field(kinds.theta, 0); }
  GradedPoly constant(const BaseCoeff& c) const { return GradedPoly(reg, c); }
  GradedPoly zero() const { return GradedPoly(reg); }
};

BvSpace make_bv_space(int n, int r, const Tensor& k);

// Total t-derivative.
GradedPoly ddt(const BvSpace& s, const GradedPoly& f);
// Euler-Lagrange derivative by the field (kind, i), from the left or right.
// For kind x this includes the partial derivative of the coefficients.
GradedPoly euler(const BvSpace& s, const GradedPoly& f, int kind, int i, bool left = true);

// Canonical representative modulo total derivatives: on the component of
// total field degree d > 0 it is (1/d) sum_z z E_z(f). Two densities differ by
// a total derivative iff their normal forms agree.
GradedPoly normal_form(const BvSpace& s, const GradedPoly& f);
bool equal_mod_total(const BvSpace& s, const GradedPoly& f, const GradedPoly& g);
// Plain integration by parts: moves the derivative off the first factor in
// kind_order whose derivative is the only one in its monomial.
GradedPoly integrate_by_parts(const BvSpace& s, const GradedPoly& f, const std::vector<int>& kind_order);

// X^i = x^i - theta p*^i, P_i = p_i + theta x*_i, Y^a = eta^a - theta lambda^a.
struct Superfields {
  std::vector<GradedPoly> X, P, Y;
};
Superfields superfield_extend(const BvSpace& s);
// Image of a function on T*[2]E[1] (untwisted registry) under z -> Z.
GradedPoly extend(const BvSpace& s, const PhaseSpace& ps, const GradedPoly& f);
// Coefficient b of a + theta b.
GradedPoly berezin_integrate(const BvSpace& s, const GradedPoly& expr);

struct BvAction {
  BvSpace space;
  GradedPoly density;
};

// Liouville form p' dx - A dx - 1/2 k eta d eta; in the canonical momentum
// p = p' - A the B-dependent piece is carried by S and H. Throws
// std::invalid_argument when dA != B or k is not constant.
BvAction build_s_bv(const BfvModel& m, const Tensor& A);

// Odd bracket with (x^i, x*_j) = delta^i_j, (p_i, p*^j) = delta_i^j and
// (eta^a, lambda^b) = -k^{ab}, in normal form.
GradedPoly antibracket(const BvSpace& s, const GradedPoly& F, const GradedPoly& G);
GradedPoly master_equation_residual(const BvAction& a);
// Normal form of the Berezin integral of {S,S}(Z) - 2 theta {S,H}(Z), the
// BFV residuals pulled back along the superfields. Equals the master residual.
GradedPoly master_from_bfv(const BvSpace& s, const BfvModel& m, const Tensor& A);

// Monomials free of the listed kinds.
GradedPoly restrict_to_zero(const BvSpace& s, const GradedPoly& f, const std::vector<int>& kinds);
// Density with x*, p* and eta set to zero.
GradedPoly classical_limit(const BvAction& a);

// Residual with x* = p* = 0, split into the lambda eta part (-2 lambda^a
// eta^b times {G_a,G_b} - C^d_ab G_d), the eta-linear part (2 eta^a times
// the symmetry residual when Gamma = 0) and the rest.
struct ClassicalParts {
  GradedPoly lambda_eta, eta, rest;
};
ClassicalParts classical_parts(const BvSpace& s, const GradedPoly& residual);

CheckRecord check_bv_master(const BfvModel& m, const Tensor& A);

}  // namespace gq

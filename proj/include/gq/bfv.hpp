#pragma once

#include <map>
#include <optional>

#include "gq/momentum.hpp"

namespace gq {

// p^nabla_i = p_i + 1/2 Gamma_abi eta^a eta^b with Gamma_abi = Gamma^c_ai k_cb.
GradedPoly covariant_momentum(const PhaseSpace& ps, const Connection& G, int i);
// Rewrites f(x, p, eta) as a polynomial in the covariant momenta: the p_i of
// the result stand for p^nabla_i.
GradedPoly to_covariant(const PhaseSpace& ps, const Connection& G, const GradedPoly& f);

// Flat form Theta + mu_a eta^a.
GradedPoly build_s_bfv(const PhaseSpace& ps, const CourantData& cd, const std::optional<Tensor>& mu = std::nullopt);
// Covariant form rho^i_a eta^a p^nabla_i - 1/6 T_abc eta^a eta^b eta^c + mu_a eta^a.
GradedPoly build_s_bfv_covariant(const PhaseSpace& ps, const CourantData& cd, const Connection& G,
                                 const std::optional<Tensor>& mu = std::nullopt);
// 1/2 g^{ij} p^nabla_i p^nabla_j + V' + 1/24 U_abcd eta^a eta^b eta^c eta^d.
GradedPoly build_h_bfv(const PhaseSpace& ps, const Connection& G, const Tensor& g, const BaseCoeff& Vp,
                       const std::optional<Tensor>& U = std::nullopt);

struct BfvResiduals {
  GradedPoly r1, r2, r3;  // {S,S}, {S,H}, {H,H}
};
// Throws std::logic_error if {H,H} is not identically zero.
BfvResiduals bfv_residuals(const PhaseSpace& ps, const GradedPoly& S, const GradedPoly& H);

// Split by (number of eta factors, momentum order).
using Buckets = std::map<std::pair<int, int>, GradedPoly>;
Buckets split_buckets(const PhaseSpace& ps, const GradedPoly& f);
GradedPoly bucket(const Buckets& b, int eta, int p, const PhaseSpace& ps);

// Sum over all indices of t(i?, a1..ak) p_i eta^a1 ... eta^ak; with_p selects
// whether the leading slot is a momentum index.
GradedPoly eta_form(const PhaseSpace& ps, const Tensor& t, bool with_p);

// Antisymmetrize the slots [first, first + count) with weight 1/count!.
Tensor alternate(const Tensor& t, int first, int count);

// (j, a, b, c): D_j T_abc + rho^i_a R_cijb + rho^i_b R_aijc + rho^i_c R_bija,
// with R_cijb = k_cd R^d_ijb. This is the curvature combination entering the
// eta^3 p component of {S, H}.
Tensor bfv_curvature(const CourantData& cd, const Connection& G);

struct UResiduals {
  Tensor res1;          // (i, a, b, c): Alt_abc[rho^i_d k^{de} U_eabc - g^{ij} bfv_curvature_jabc]
  Tensor res1_literal;  // (i, a, b, c): rho^i_d k^{de} U_eabc - g^{ij} S^d_jab k_dc, S from geometry
  Tensor res2;          // (a..e): Alt[rho^i_a D_i U_bcde - 2 k^{fg} T_fab U_cdeg]
  bool zero() const { return res1.is_zero() && res2.is_zero(); }
};
UResiduals u_equations_residual(const CourantData& cd, const Connection& G, const Tensor& g, const Tensor& U);

// (a, b, c): k^{ef} mu_e U_fabc.
Tensor mu_u_coupling(const CourantData& cd, const Tensor& mu, const Tensor& U);

struct USolution {
  bool feasible = false;
  Tensor U;            // valid when feasible
  UResiduals residuals;
  std::string certificate;  // inconsistent equation when infeasible
};
// Solves res1 = 0 for U with polynomial entries of degree <= max_degree.
// Throws std::invalid_argument when max_degree is outside [0, 6].
USolution solve_u_linear(const CourantData& cd, const Connection& G, const Tensor& g, int max_degree);
int default_u_degree(const CourantData& cd, const Connection& G, const Tensor& g);

// Totally antisymmetric 4-tensor from its value on one sorted quadruple.
Tensor four_form(int r, int a, int b, int c, int d, const BaseCoeff& v);

struct BfvModel {
  CourantData cd;
  Connection G;
  Tensor g;
  Tensor B;   // (n, n), zero when untwisted
  Tensor mu;  // (r)
  BaseCoeff Vp;
  Tensor U;   // (r, r, r, r)
};

// Residual components named by the condition they encode.
CheckRecord check_bfv(const BfvModel& m);

}  // namespace gq

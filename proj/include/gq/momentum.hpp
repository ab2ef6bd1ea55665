#pragma once

#include "gq/geometry.hpp"

namespace gq {

// gamma(i, a) = -B_ij rho^j_a.
Tensor gamma_from(const CourantData& cd, const Tensor& B);

// (i, a): D_i mu_a - gamma_ia.
Tensor h2_residual(const CourantData& cd, const Connection& G, const Tensor& B, const Tensor& mu);

struct EdMu {
  Tensor eta2;   // (a, b) antisymmetric; coefficient of eta^a eta^b for a < b, mirrored
  Tensor p_part; // (i): coefficient of p_i, equal to rho(mu*)^i
};
// {Theta, mu_a eta^a} split into its eta-eta and p components.
EdMu e_d_mu(const CourantData& cd, const Tensor& mu);

// (a, b): (E d mu)_ab - rho^i_a rho^j_b B_ij.
Tensor h3_residual(const CourantData& cd, const Tensor& B, const Tensor& mu);

// (i, j, a): D_i gamma_ja - D_j gamma_ia, and the symmetric combination.
Tensor h1_residual(const CourantData& cd, const Connection& G, const Tensor& B);
Tensor h1_symmetric(const CourantData& cd, const Connection& G, const Tensor& B);

// Momentum-map conditions on a trivial Lie algebra bundle with D = d:
// (i, a): d_i mu_a - (i_{rho_a} B)_i, and (a, b): rho'(e_a) mu_b - mu([e_a, e_b])
// with the derived anchor rho' = -rho and [e_a, e_b] = C^d_ab e_d, C^d_ab = k^{dc} f_cab.
Tensor momentmap_h2(const CourantData& cd, const Tensor& B, const Tensor& mu);
Tensor momentmap_equivariance(const CourantData& cd, const Tensor& mu);

enum class MomentumClass { None, WeaklyHamiltonian, Hamiltonian };
struct Classification {
  MomentumClass cls = MomentumClass::None;
  bool presymplectically_anchored = false;
};
Classification classify(const CourantData& cd, const Connection& G, const Tensor& B, const Tensor& mu);
std::string to_string(MomentumClass c);

CheckRecord check_h1(const CourantData& cd, const Connection& G, const Tensor& B);
CheckRecord check_h2(const CourantData& cd, const Connection& G, const Tensor& B, const Tensor& mu);
CheckRecord check_h3(const CourantData& cd, const Tensor& B, const Tensor& mu);

}  // namespace gq

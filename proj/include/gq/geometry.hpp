#pragma once

#include "gq/courant.hpp"

namespace gq {

// Gamma(b, a, i) = Gamma^b_{ai}, shape (r, r, n).
using Connection = Tensor;

Connection zero_connection(int n, int r);

// D_i e^a = d_i e^a + Gamma^a_{bi} e^b; result (a, i).
Tensor covariant_derivative_upper(const Connection& G, const Tensor& e);
// D_i mu_a = d_i mu_a - Gamma^b_{ai} mu_b; result (i, a).
Tensor covariant_derivative_lower(const Connection& G, const Tensor& mu);

// R(b, i, j, a) = R^b_{ija}.
Tensor curvature(const Connection& G);

// Gamma_{bci} = Gamma^d_{bi} k_dc, shape (r, r, n).
Tensor lowered_connection(const Connection& G, const Tensor& k);

// T_abc = f_abc - (rho'^i_a Gamma_{bci} + cycl) with the derived anchor rho' = -rho.
Tensor e_torsion(const CourantData& cd, const Connection& G);

// S(c, j, a, b) = S^c_{jab} = D_j T^c_ab + rho'^i_a R^c_{ijb} - rho'^i_b R^c_{ija}.
Tensor basic_curvature(const CourantData& cd, const Connection& G);

// (a, i, j): L_{rho_a} g^{ij} + g^{ik} Gamma^b_{ak} rho^j_b + g^{jk} Gamma^b_{ak} rho^i_b.
Tensor e_connection_on_metric(const CourantData& cd, const Connection& G, const Tensor& g_inv);

// Exterior derivative of a p-form stored as a totally antisymmetric tensor
// (a 0-form is a rank-0 tensor with one entry).
Tensor exterior_d(const Tensor& form, int n);

}  // namespace gq

#pragma once

#include <optional>

#include "gq/momentum.hpp"

namespace gq {

// G_a = rho^i_a p_i + alpha_a and H = 1/2 g^{ij} p_i p_j + beta^i p_i + V.
// g_lower is the exact inverse of g and is required when beta != 0.
struct MechanicsData {
  Tensor alpha;    // (r)
  Tensor g;        // (n, n), g^{ij}
  Tensor beta;     // (n)
  BaseCoeff V;
  std::optional<Tensor> g_lower;
};

MechanicsData zero_mechanics(int n, int r);

struct Absorbed {
  Tensor A;    // (n), A_i = g_ij beta^j
  BaseCoeff V; // V' = V - 1/2 g^{ij} A_i A_j
  Tensor mu;   // (r), mu_a = alpha_a - rho^i_a A_i
  Tensor B;    // (n, n), dA
};
// Throws std::invalid_argument when beta != 0 and g_lower is missing or is not
// the inverse of g.
Absorbed absorb_beta(const CourantData& cd, const MechanicsData& mech);

// A residual family and its split by momentum degree. For each label
// (a, b) or (a), order 0, 1, 2 coefficients are tensors:
//   first class:  order0 (a, b), order1 (a, b, i)
//   symmetry:     order0 (a), order1 (a, i), order2 (a, i, j) with the
//                 quadratic part written as 1/2 M^{ij} p_i p_j, M symmetric
struct BracketResidual {
  std::vector<GradedPoly> residual;
  std::vector<Tensor> by_p_order;
  bool is_zero() const;
};

// Phase space in (x, p') with {p'_i, p'_j} = -B_ij.
PhaseSpace mechanics_phase_space(const CourantData& cd, const Absorbed& ab);
std::vector<GradedPoly> constraints(const PhaseSpace& ps, const CourantData& cd, const Tensor& mu);
GradedPoly mechanics_hamiltonian(const PhaseSpace& ps, const Tensor& g, const BaseCoeff& Vp);

// {G_a, G_b} - k^{cd} f_{cab} G_d for a < b, in the primed variables.
BracketResidual first_class_residual(const CourantData& cd, const MechanicsData& mech);
// Same residual computed in the original canonical variables (x, p).
std::vector<GradedPoly> first_class_residual_unprimed(const CourantData& cd, const MechanicsData& mech);
// Rewrite a function of (x, p) in terms of p' = p + A.
GradedPoly to_primed(const PhaseSpace& ps, const GradedPoly& f, const Tensor& A);

// {G_a,{G_b,G_c}} with the bracket relation substituted: sum over cyclic
// (a, b, c) of {G_a, C^d_bc G_d}, for a < b < c.
std::vector<GradedPoly> realized_jacobi(const CourantData& cd, const MechanicsData& mech);

// {H, G_a} + g^{ij} Gamma^b_{aj} p'_i G_b.
BracketResidual symmetry_residual(const CourantData& cd, const Connection& G, const MechanicsData& mech);

// (a): rho^i_a d_i V, read off from Q V = {Theta, V}.
Tensor e_d_potential(const CourantData& cd, const BaseCoeff& V);
// (i, a): -g^{ij} (H2)_ja, the form in which H2 enters the order-1 part.
Tensor raise_h2(const Tensor& g, const Tensor& h2);

// tau^b_a = beta^j Gamma^b_aj and g^{ij} Gamma^b_aj A_i.
Tensor tau_from_beta(const Connection& G, const Tensor& beta);
Tensor tau_from_A(const Connection& G, const Tensor& g, const Tensor& A);

Report full_consistency(const CourantData& cd, const Connection& G, const MechanicsData& mech);

}  // namespace gq

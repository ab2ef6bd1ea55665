#pragma once

#include <optional>

#include "gq/poisson.hpp"
#include "gq/report.hpp"

namespace gq {

// Local data of a Courant algebroid: k_ab (r x r), rho(i, a) = rho^i_a
// (n x r) and the totally antisymmetric f_abc.
struct CourantData {
  int n = 0, r = 0;
  Tensor k, rho, f;
};

void validate(const CourantData& cd);  // throws std::invalid_argument
CourantData zero_courant(int n, int r, const Tensor& k);

PhaseSpace make_phase_space(const CourantData& cd, std::optional<Tensor> twist = std::nullopt);

struct CourantResiduals {
  Tensor i;    // k^{ab} rho^i_a rho^j_b
  Tensor ii;   // (i, a, b)
  Tensor iii;  // (a, b, c, d)
  bool courant() const { return i.is_zero() && ii.is_zero() && iii.is_zero(); }
};
CourantResiduals courant_residuals(const CourantData& cd);
CheckRecord verify_courant_axioms(const CourantData& cd);

// Theta = eta^a rho^i_a p_i - 1/6 f_abc eta^a eta^b eta^c.
GradedPoly build_theta(const PhaseSpace& ps, const CourantData& cd);
GradedPoly e_differential(const PhaseSpace& ps, const GradedPoly& theta, const GradedPoly& f);

// Derived-bracket calculus on sections of E. A section e is represented by the
// degree-1 function e^a k_ab eta^b.
class Dorfman {
 public:
  Dorfman(PhaseSpace ps, GradedPoly theta);
  GradedPoly embed(const Tensor& e) const;
  Tensor extract(const GradedPoly& f) const;
  Tensor bracket(const Tensor& e1, const Tensor& e2) const;
  // Derived anchor: the vector field f -> {{e,Theta},f} on base functions.
  BaseCoeff anchor_apply(const Tensor& e, const BaseCoeff& f) const;
  Tensor anchor(const Tensor& e) const;
  BaseCoeff pairing(const Tensor& e1, const Tensor& e2) const;
  // Generalized derivative: <D f, e> = 1/2 rho(e) f for the derived anchor.
  Tensor gen_derivative(const BaseCoeff& f) const;
  const PhaseSpace& ps() const { return ps_; }

 private:
  PhaseSpace ps_;
  GradedPoly theta_;
};

struct DorfmanAxioms {
  Tensor leibniz, anchor_hom, anchor_leibniz, symmetric_part, invariance;
};
DorfmanAxioms dorfman_axioms(const Dorfman& d, const Tensor& e1, const Tensor& e2, const Tensor& e3,
                             const BaseCoeff& fn);

CourantData standard_courant(int n, const Tensor& h);
// C(c, a, b) = C^c_ab, inner = invariant metric, rho (n x r).
CourantData action_algebroid(const Tensor& C, const Tensor& inner, const Tensor& rho);

// Totally antisymmetric tensor from entries given on sorted index tuples.
Tensor levi_civita(int dim);

}  // namespace gq

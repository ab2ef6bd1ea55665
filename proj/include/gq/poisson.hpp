#pragma once

#include <optional>

#include "gq/graded_poly.hpp"
#include "gq/tensor.hpp"

namespace gq {

// Registry with eta (degree 1) and p (degree 2), in that rank order.
struct PhaseKinds {
  int eta = 0;
  int p = 1;
};
std::shared_ptr<Registry> phase_registry(int n);

// Functions on T*[2]E[1]: {x^i,p_j} = delta, {eta^a,eta^b} = k^{ab},
// {p_i,p_j} = -B_ij when twisted. Other generators of the registry are inert.
class PhaseSpace {
 public:
  PhaseSpace(RegPtr reg, PhaseKinds kinds, int n, int r, Tensor k_lower,
             std::optional<Tensor> twist = std::nullopt, bool allow_open_twist = false);

  const RegPtr& reg() const { return reg_; }
  int n() const { return n_; }
  int r() const { return r_; }
  const PhaseKinds& kinds() const { return kinds_; }
  const Tensor& k() const { return k_; }
  const Tensor& k_inv() const { return kinv_; }
  const std::optional<Tensor>& twist() const { return twist_; }

  GradedPoly x(int i) const { return GradedPoly(reg_, BaseCoeff::var(i)); }
  GradedPoly p(int i) const { return GradedPoly::gen(reg_, kinds_.p, i); }
  GradedPoly eta(int a) const { return GradedPoly::gen(reg_, kinds_.eta, a); }
  GradedPoly constant(const BaseCoeff& c) const { return GradedPoly(reg_, c); }
  GradedPoly zero() const { return GradedPoly(reg_); }

  GradedPoly bracket(const GradedPoly& f, const GradedPoly& g) const;
  Derivation hamiltonian(const GradedPoly& charge) const;
  GradedPoly jacobiator(const GradedPoly& f, const GradedPoly& g, const GradedPoly& h) const;

  // Copy of this phase space with a different (or no) twist.
  PhaseSpace with_twist(std::optional<Tensor> twist, bool allow_open = false) const;

 private:
  RegPtr reg_;
  PhaseKinds kinds_;
  int n_, r_;
  Tensor k_, kinv_;
  std::optional<Tensor> twist_;
};

// Cyclic sum d_i B_jk + d_j B_ki + d_k B_ij.
Tensor closure_defect(const Tensor& b);

}  // namespace gq

#pragma once

#include <optional>
#include <vector>

#include "gq/bfv.hpp"

namespace gq {

// Functions on T[1]M for M = T*[2]E[1]. The tangent generators Fx, Feta, Fp
// have degrees 1, 2, 3 and stand for the de Rham images of x, eta, p.
struct WeilKinds {
  int eta = 0, p = 1, fx = 2, feta = 3, fp = 4;
};
RegPtr weil_registry(int n);

class Weil {
 public:
  // theta lives on base (a phase space over phase_registry). With
  // require_homological, throws std::invalid_argument unless {theta,theta} = 0.
  Weil(const PhaseSpace& base, const GradedPoly& theta, bool require_homological = true);

  const PhaseSpace& ps() const { return ps_; }
  const GradedPoly& charge() const { return theta_; }
  const WeilKinds& kinds() const { return kinds_; }
  int n() const { return ps_.n(); }
  int r() const { return ps_.r(); }

  GradedPoly x(int i) const { return ps_.x(i); }
  GradedPoly eta(int a) const { return ps_.eta(a); }
  GradedPoly p(int i) const { return ps_.p(i); }
  GradedPoly fx(int i) const { return GradedPoly::gen(ps_.reg(), kinds_.fx, i); }
  GradedPoly feta(int a) const { return GradedPoly::gen(ps_.reg(), kinds_.feta, a); }
  GradedPoly fp(int i) const { return GradedPoly::gen(ps_.reg(), kinds_.fp, i); }
  GradedPoly constant(const BaseCoeff& c) const { return ps_.constant(c); }
  GradedPoly zero() const { return ps_.zero(); }

  // Copy of a function on the base phase space into W.
  GradedPoly lift(const GradedPoly& f) const;
  // x, eta, p followed by Fx, Feta, Fp.
  std::vector<GradedPoly> base_generators() const;
  std::vector<GradedPoly> tangent_generators() const;
  std::vector<GradedPoly> generators() const;
  bool is_base(const GradedPoly& f) const;

  // delta z = F_z, delta F_z = 0.
  GradedPoly delta(const GradedPoly& f) const;
  // Q z = {theta, z}, Q F_z = -F_{Q z}.
  GradedPoly q(const GradedPoly& f) const;
  GradedPoly d(const GradedPoly& f) const;
  // e is a homogeneous function on M. iota_e z = {e, z},
  // iota_e F_z = (-1)^|e| F_{iota_e z}; degree |e| - 2.
  GradedPoly iota(const GradedPoly& e, const GradedPoly& f) const;
  // L_e z = {{e, theta}, z}, L_e F_z = -(-1)^|e| F_{L_e z}; degree |e| - 1.
  GradedPoly lie(const GradedPoly& e, const GradedPoly& f) const;

 private:
  PhaseSpace ps_;
  GradedPoly theta_;
  WeilKinds kinds_;
  Derivation iota_derivation(const GradedPoly& e) const;
  Derivation lie_derivation(const GradedPoly& e) const;
};

Weil weil_for(const CourantData& cd, const std::optional<Tensor>& twist = std::nullopt);
// Weil algebra of S = theta + mu_a eta^a on the twisted phase space.
// {S,S} need not vanish.
Weil deformed_weil(const CourantData& cd, const Tensor& B, const Tensor& mu);

// Operators on W and their graded commutator.
struct WeilOp {
  int degree = 0;
  std::function<GradedPoly(const GradedPoly&)> apply;
};
WeilOp op_d(const Weil& w);
WeilOp op_iota(const Weil& w, const GradedPoly& e);
WeilOp op_lie(const Weil& w, const GradedPoly& e);
GradedPoly commutator(const WeilOp& a, const WeilOp& b, const GradedPoly& f);

// L_e f - (iota_e d f - (-1)^|e| d iota_e f).
GradedPoly cartan_magic_residual(const Weil& w, const GradedPoly& e, const GradedPoly& f);

// Basis sections eta^a, x-dependent sections (1 + x^i) eta^a, and x^0, p_0.
std::vector<GradedPoly> test_sections(const Weil& w);
// Generators and all products of two generators of total degree 2.
std::vector<GradedPoly> test_elements(const Weil& w);

CheckRecord check_weil_d(const Weil& w);
CheckRecord check_cartan_magic(const Weil& w, const std::vector<GradedPoly>& sections,
                               const std::vector<GradedPoly>& elements);
// [iota_e1, iota_e2] = iota_{iota_e1 e2}, [iota_e1, L_e2] = -(-1)^{|e1|(|e2|+1)} iota_{L_e2 e1},
// [L_e1, L_e2] = L_{L_e1 e2}.
CheckRecord check_bracket_relations(const Weil& w, const std::vector<GradedPoly>& sections,
                                    const std::vector<GradedPoly>& elements);
// iota_{eta^a} vanishes on every tangent generator.
CheckRecord check_horizontal(const Weil& w);
// L_{e1} e2 against the Dorfman bracket of the courant module on basis and
// x-dependent sections.
CheckRecord check_dorfman_match(const Weil& w, const CourantData& cd);

// Deformed differential: d'^2 on generators, horizontality, and the
// momentum-section checks H2 and H3 for comparison.
struct DeformedWeilResult {
  bool d_squared_zero = false;
  bool horizontal = false;
  bool momentum = false;
  CheckRecord record;
};
DeformedWeilResult check_deformed_weil(const CourantData& cd, const Connection& G, const Tensor& B,
                                       const Tensor& mu);

// Cartan model on W_hor (x)B with B a second copy of the functions on M. The
// tangent generators carry the W factor and the base generators the B factor:
// d_C = 1 (x) Q - Fp_i (x) iota_p^i + Fx^i (x) iota_{x i} - 1/2 k_ab Feta^a (x) iota_eta^b,
// iota_p^i = {x^i, -}, iota_{x i} = -{p_i, -}, iota_eta^b = {eta^b, -}.
GradedPoly cartan_d(const Weil& w, const GradedPoly& f);
// L_z f = 0 for every coordinate generator z of M.
bool is_invariant(const Weil& w, const GradedPoly& f);
CheckRecord check_cartan_model(const Weil& w, const std::vector<GradedPoly>& representatives);

}  // namespace gq

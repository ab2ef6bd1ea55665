#include "gq/poisson.hpp"

#include <set>
#include <stdexcept>

namespace gq {

std::shared_ptr<Registry> phase_registry(int n) {
  auto reg = std::make_shared<Registry>(n);
  reg->add("eta", 1);
  reg->add("p", 2);
  return reg;
}

Tensor closure_defect(const Tensor& b) {
  int n = b.shape()[0];
  Tensor r({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        r(i, j, k) = b(j, k).partial(i) + b(k, i).partial(j) + b(i, j).partial(k);
  return r;
}

PhaseSpace::PhaseSpace(RegPtr reg, PhaseKinds kinds, int n, int r, Tensor k_lower,
                       std::optional<Tensor> twist, bool allow_open_twist)
    : reg_(std::move(reg)), kinds_(kinds), n_(n), r_(r), k_(std::move(k_lower)), twist_(std::move(twist)) {
  if (k_.shape() != std::vector<int>{r, r}) throw std::invalid_argument("fiber metric must be r x r");
  if (!k_.symmetry_defect().is_zero()) throw std::invalid_argument("fiber metric must be symmetric");
  if (!k_.is_constant()) throw std::invalid_argument("fiber metric must be constant");
  kinv_ = constant_inverse(k_);
  if (twist_) {
    if (twist_->shape() != std::vector<int>{n, n}) throw std::invalid_argument("twist must be n x n");
    if (!twist_->antisymmetry_defect().is_zero()) throw std::invalid_argument("twist must be antisymmetric");
    if (!allow_open_twist && !closure_defect(*twist_).is_zero())
      throw std::invalid_argument("twist must be closed");
  }
}

PhaseSpace PhaseSpace::with_twist(std::optional<Tensor> twist, bool allow_open) const {
  return PhaseSpace(reg_, kinds_, n_, r_, k_, std::move(twist), allow_open);
}

namespace {

std::set<Gen> gens_of(const GradedPoly& f, int kind) {
  std::set<Gen> s;
  for (auto& [m, c] : f.terms())
    for (auto& fac : m)
      if (fac.g.kind == kind) s.insert(fac.g);
  return s;
}

}  // namespace

GradedPoly PhaseSpace::bracket(const GradedPoly& f, const GradedPoly& g) const {
  GradedPoly out(reg_);
  if (f.is_zero() || g.is_zero()) return out;
  for (int i = 0; i < n_; ++i) {
    Gen pi{static_cast<std::int16_t>(kinds_.p), static_cast<std::int16_t>(i), 0};
    GradedPoly fx = f.partial_x(i);
    if (!fx.is_zero()) {
      GradedPoly gp = g.derive_left(pi);
      if (!gp.is_zero()) out += fx * gp;
    }
    GradedPoly gx = g.partial_x(i);
    if (!gx.is_zero()) {
      GradedPoly fp = f.derive_right(pi);
      if (!fp.is_zero()) out -= fp * gx;
    }
  }
  auto fe = gens_of(f, kinds_.eta), ge = gens_of(g, kinds_.eta);
  if (!fe.empty() && !ge.empty()) {
    std::vector<GradedPoly> gl(r_);
    for (auto& b : ge) gl[b.i] = g.derive_left(b);
    for (auto& a : fe) {
      GradedPoly fr = f.derive_right(a);
      for (auto& b : ge) {
        const BaseCoeff& kab = kinv_(a.i, b.i);
        if (kab.is_zero()) continue;
        out += fr * kab * gl[b.i];
      }
    }
  }
  if (twist_) {
    auto fp = gens_of(f, kinds_.p), gp = gens_of(g, kinds_.p);
    for (auto& a : fp) {
      GradedPoly fr;
      for (auto& b : gp) {
        const BaseCoeff& bij = (*twist_)(a.i, b.i);
        if (bij.is_zero()) continue;
        if (fr.is_zero()) fr = f.derive_right(a);
        out -= fr * bij * g.derive_left(b);
      }
    }
  }
  return out;
}

Derivation PhaseSpace::hamiltonian(const GradedPoly& charge) const {
  Derivation d;
  Degree deg = charge.degree();
  d.degree = deg.homogeneous() ? deg.value - 2 : 0;
  PhaseSpace self = *this;
  d.on_gen = [self, charge](const Gen& g) { return self.bracket(charge, GradedPoly::gen(self.reg(), g)); };
  for (int i = 0; i < n_; ++i) d.on_x.push_back(bracket(charge, x(i)));
  return d;
}

GradedPoly PhaseSpace::jacobiator(const GradedPoly& f, const GradedPoly& g, const GradedPoly& h) const {
  int s = (f.parity() & g.parity()) ? -1 : 1;
  GradedPoly r = bracket(f, bracket(g, h)) - bracket(bracket(f, g), h);
  GradedPoly t = bracket(g, bracket(f, h));
  return s > 0 ? r - t : r + t;
}

}  // namespace gq

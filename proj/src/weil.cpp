#include "gq/weil.hpp"

#include <stdexcept>

namespace gq {

namespace {

int sign_pow(int e) { return (e % 2 + 2) % 2 ? -1 : 1; }

int homogeneous_degree(const GradedPoly& e) {
  Degree d = e.degree();
  if (d.kind == Degree::Mixed) throw std::invalid_argument("section must be homogeneous");
  return d.value;
}

PhaseSpace weil_phase_space(const PhaseSpace& base) {
  return PhaseSpace(weil_registry(base.n()), PhaseKinds{}, base.n(), base.r(), base.k(), base.twist());
}

}  // namespace

RegPtr weil_registry(int n) {
  auto reg = phase_registry(n);
  reg->add("Fx", 1);
  reg->add("Feta", 2);
  reg->add("Fp", 3);
  return reg;
}

Weil::Weil(const PhaseSpace& base, const GradedPoly& theta, bool require_homological)
    : ps_(weil_phase_space(base)) {
  theta_ = lift(theta);
  if (require_homological && !ps_.bracket(theta_, theta_).is_zero())
    throw std::invalid_argument("charge is not homological: {theta, theta} != 0");
}

GradedPoly Weil::lift(const GradedPoly& f) const {
  if (f.reg() == ps_.reg()) return f;
  return substitute(f, ps_.reg(), [](const Gen&) -> std::optional<GradedPoly> { return std::nullopt; });
}

std::vector<GradedPoly> Weil::base_generators() const {
  std::vector<GradedPoly> out;
  for (int i = 0; i < n(); ++i) out.push_back(x(i));
  for (int a = 0; a < r(); ++a) out.push_back(eta(a));
  for (int i = 0; i < n(); ++i) out.push_back(p(i));
  return out;
}

std::vector<GradedPoly> Weil::tangent_generators() const {
  std::vector<GradedPoly> out;
  for (int i = 0; i < n(); ++i) out.push_back(fx(i));
  for (int a = 0; a < r(); ++a) out.push_back(feta(a));
  for (int i = 0; i < n(); ++i) out.push_back(fp(i));
  return out;
}

std::vector<GradedPoly> Weil::generators() const {
  auto out = base_generators();
  for (auto& g : tangent_generators()) out.push_back(g);
  return out;
}

bool Weil::is_base(const GradedPoly& f) const {
  for (auto& [m, c] : f.terms())
    for (auto& fac : m)
      if (fac.g.kind != kinds_.eta && fac.g.kind != kinds_.p) return false;
  return true;
}

GradedPoly Weil::delta(const GradedPoly& f) const {
  Derivation D;
  D.degree = 1;
  D.on_gen = [this](const Gen& g) {
    if (g.kind == kinds_.eta) return feta(g.i);
    if (g.kind == kinds_.p) return fp(g.i);
    return zero();
  };
  for (int i = 0; i < n(); ++i) D.on_x.push_back(fx(i));
  return D.apply(f);
}

GradedPoly Weil::q(const GradedPoly& f) const {
  Derivation D;
  D.degree = 1;
  D.on_gen = [this](const Gen& g) {
    if (g.kind == kinds_.eta) return ps_.bracket(theta_, eta(g.i));
    if (g.kind == kinds_.p) return ps_.bracket(theta_, p(g.i));
    if (g.kind == kinds_.fx) return -delta(ps_.bracket(theta_, x(g.i)));
    if (g.kind == kinds_.feta) return -delta(ps_.bracket(theta_, eta(g.i)));
    return -delta(ps_.bracket(theta_, p(g.i)));
  };
  for (int i = 0; i < n(); ++i) D.on_x.push_back(ps_.bracket(theta_, x(i)));
  return D.apply(f);
}

GradedPoly Weil::d(const GradedPoly& f) const { return delta(f) + q(f); }

Derivation Weil::iota_derivation(const GradedPoly& e) const {
  if (!is_base(e)) throw std::invalid_argument("section must be a function on M");
  int deg = homogeneous_degree(e);
  BaseCoeff s(sign_pow(deg));
  Derivation D;
  D.degree = deg - 2;
  D.on_gen = [this, e, s](const Gen& g) {
    if (g.kind == kinds_.eta) return ps_.bracket(e, eta(g.i));
    if (g.kind == kinds_.p) return ps_.bracket(e, p(g.i));
    if (g.kind == kinds_.fx) return s * delta(ps_.bracket(e, x(g.i)));
    if (g.kind == kinds_.feta) return s * delta(ps_.bracket(e, eta(g.i)));
    return s * delta(ps_.bracket(e, p(g.i)));
  };
  for (int i = 0; i < n(); ++i) D.on_x.push_back(ps_.bracket(e, x(i)));
  return D;
}

Derivation Weil::lie_derivation(const GradedPoly& e) const {
  if (!is_base(e)) throw std::invalid_argument("section must be a function on M");
  int deg = homogeneous_degree(e);
  BaseCoeff s(-sign_pow(deg));
  GradedPoly h = ps_.bracket(e, theta_);
  Derivation D;
  D.degree = deg - 1;
  D.on_gen = [this, h, s](const Gen& g) {
    if (g.kind == kinds_.eta) return ps_.bracket(h, eta(g.i));
    if (g.kind == kinds_.p) return ps_.bracket(h, p(g.i));
    if (g.kind == kinds_.fx) return s * delta(ps_.bracket(h, x(g.i)));
    if (g.kind == kinds_.feta) return s * delta(ps_.bracket(h, eta(g.i)));
    return s * delta(ps_.bracket(h, p(g.i)));
  };
  for (int i = 0; i < n(); ++i) D.on_x.push_back(ps_.bracket(h, x(i)));
  return D;
}

GradedPoly Weil::iota(const GradedPoly& e, const GradedPoly& f) const { return iota_derivation(lift(e)).apply(f); }
GradedPoly Weil::lie(const GradedPoly& e, const GradedPoly& f) const { return lie_derivation(lift(e)).apply(f); }

Weil weil_for(const CourantData& cd, const std::optional<Tensor>& twist) {
  PhaseSpace ps = make_phase_space(cd, twist);
  return Weil(ps, build_theta(ps, cd));
}

Weil deformed_weil(const CourantData& cd, const Tensor& B, const Tensor& mu) {
  PhaseSpace ps = make_phase_space(cd, B);
  return Weil(ps, build_s_bfv(ps, cd, mu), false);
}

WeilOp op_d(const Weil& w) {
  return {1, [&w](const GradedPoly& f) { return w.d(f); }};
}

WeilOp op_iota(const Weil& w, const GradedPoly& e) {
  return {homogeneous_degree(e) - 2, [&w, e](const GradedPoly& f) { return w.iota(e, f); }};
}

WeilOp op_lie(const Weil& w, const GradedPoly& e) {
  return {homogeneous_degree(e) - 1, [&w, e](const GradedPoly& f) { return w.lie(e, f); }};
}

GradedPoly commutator(const WeilOp& a, const WeilOp& b, const GradedPoly& f) {
  return a.apply(b.apply(f)) - BaseCoeff(sign_pow(a.degree * b.degree)) * b.apply(a.apply(f));
}

GradedPoly cartan_magic_residual(const Weil& w, const GradedPoly& e, const GradedPoly& f) {
  return commutator(op_iota(w, e), op_d(w), f) - w.lie(e, f);
}

std::vector<GradedPoly> test_sections(const Weil& w) {
  std::vector<GradedPoly> out;
  for (int a = 0; a < w.r(); ++a) out.push_back(w.eta(a));
  if (w.n() > 0) {
    for (int a = 0; a < w.r(); ++a) out.push_back((w.constant(BaseCoeff(1)) + w.x(a % w.n())) * w.eta(a));
    out.push_back(w.x(0));
    out.push_back(w.p(0));
  }
  return out;
}

std::vector<GradedPoly> test_elements(const Weil& w) {
  auto gens = w.generators();
  std::vector<GradedPoly> out = gens;
  for (std::size_t s = 0; s < gens.size(); ++s)
    for (std::size_t t = s; t < gens.size(); ++t) {
      Degree ds = gens[s].degree(), dt = gens[t].degree();
      if (ds.value + dt.value != 2) continue;
      GradedPoly m = gens[s] * gens[t];
      if (!m.is_zero()) out.push_back(m);
    }
  return out;
}

namespace {

// Records the first nonzero value and the number of failures.
struct Tally {
  GradedPoly first;
  int failures = 0;
  int cases = 0;
  explicit Tally(const RegPtr& reg) : first(reg) {}
  void see(const GradedPoly& v) {
    ++cases;
    if (v.is_zero()) return;
    if (failures++ == 0) first = v;
  }
  void put(CheckRecord& rec, const std::string& name) const {
    rec.add(name, first);
    rec.note(name + "_cases", std::to_string(cases));
    rec.note(name + "_failures", std::to_string(failures));
  }
};

}  // namespace

CheckRecord check_weil_d(const Weil& w) {
  CheckRecord rec;
  rec.check = "Weil_d";
  rec.anchor = "d^2 = 0 on generators";
  Tally t(w.ps().reg());
  for (auto& g : w.generators()) t.see(w.d(w.d(g)));
  t.put(rec, "d_squared");
  return rec;
}

CheckRecord check_cartan_magic(const Weil& w, const std::vector<GradedPoly>& sections,
                               const std::vector<GradedPoly>& elements) {
  CheckRecord rec;
  rec.check = "Weil_cartan_magic";
  rec.anchor = "L_e = iota_e d - (-1)^|e| d iota_e";
  Tally t(w.ps().reg());
  for (auto& e : sections)
    for (auto& f : elements) t.see(cartan_magic_residual(w, e, f));
  t.put(rec, "magic");
  return rec;
}

CheckRecord check_bracket_relations(const Weil& w, const std::vector<GradedPoly>& sections,
                                    const std::vector<GradedPoly>& elements) {
  CheckRecord rec;
  rec.check = "Weil_brackets";
  rec.anchor = "graded Lie algebra of iota and L";
  Tally ii(w.ps().reg()), il(w.ps().reg()), ll(w.ps().reg());
  for (auto& e1 : sections)
    for (auto& e2 : sections) {
      int d1 = homogeneous_degree(e1), d2 = homogeneous_degree(e2);
      GradedPoly ie = w.ps().bracket(e1, e2);
      GradedPoly le21 = w.lie(e2, e1), le12 = w.lie(e1, e2);
      WeilOp i1 = op_iota(w, e1), i2 = op_iota(w, e2), l1 = op_lie(w, e1), l2 = op_lie(w, e2);
      BaseCoeff s(-sign_pow(d1 * (d2 + 1)));
      for (auto& f : elements) {
        ii.see(commutator(i1, i2, f) - (ie.is_zero() ? w.zero() : w.iota(ie, f)));
        il.see(commutator(i1, l2, f) - (le21.is_zero() ? w.zero() : s * w.iota(le21, f)));
        ll.see(commutator(l1, l2, f) - (le12.is_zero() ? w.zero() : w.lie(le12, f)));
      }
    }
  ii.put(rec, "iota_iota");
  il.put(rec, "iota_lie");
  ll.put(rec, "lie_lie");
  return rec;
}

CheckRecord check_horizontal(const Weil& w) {
  CheckRecord rec;
  rec.check = "Weil_horizontal";
  rec.anchor = "iota_e F = 0 for basis sections";
  Tally t(w.ps().reg());
  for (int a = 0; a < w.r(); ++a)
    for (auto& g : w.tangent_generators()) t.see(w.iota(w.eta(a), g));
  t.put(rec, "iota_F");
  return rec;
}

CheckRecord check_dorfman_match(const Weil& w, const CourantData& cd) {
  CheckRecord rec;
  rec.check = "Weil_dorfman";
  rec.anchor = "L_e1 e2 = [e1, e2]_D";
  PhaseSpace base = make_phase_space(cd, w.ps().twist());
  Dorfman dor(base, build_theta(base, cd));
  std::vector<Tensor> secs;
  for (int a = 0; a < cd.r; ++a) {
    Tensor e({cd.r});
    e(a) = BaseCoeff(1);
    secs.push_back(e);
    if (cd.n > 0) {
      Tensor v({cd.r});
      v(a) = BaseCoeff(1) + BaseCoeff::var(a % cd.n);
      secs.push_back(v);
    }
  }
  Tally t(w.ps().reg());
  for (auto& e1 : secs)
    for (auto& e2 : secs) {
      GradedPoly lhs = w.lie(w.lift(dor.embed(e1)), w.lift(dor.embed(e2)));
      t.see(lhs - w.lift(dor.embed(dor.bracket(e1, e2))));
    }
  t.put(rec, "dorfman");
  return rec;
}

DeformedWeilResult check_deformed_weil(const CourantData& cd, const Connection& G, const Tensor& B,
                                       const Tensor& mu) {
  Weil w = deformed_weil(cd, B, mu);
  DeformedWeilResult out;
  CheckRecord& rec = out.record;
  rec.check = "Weil_deformed";
  rec.anchor = "d'^2 = 0 with the momentum section";
  CheckRecord dd = check_weil_d(w);
  CheckRecord hz = check_horizontal(w);
  CheckRecord h2 = check_h2(cd, G, B, mu), h3 = check_h3(cd, B, mu);
  out.d_squared_zero = dd.pass();
  out.horizontal = hz.pass();
  out.momentum = h2.pass() && h3.pass();
  for (auto& r : dd.residuals) rec.residuals.push_back(r);
  for (auto& i : dd.info) rec.info.push_back(i);
  for (auto& r : hz.residuals) rec.residuals.push_back(r);
  rec.note("momentum_h2", h2.verdict_text());
  rec.note("momentum_h3", h3.verdict_text());
  rec.note("agrees_with_momentum", out.d_squared_zero == out.momentum ? "yes" : "no");
  return out;
}

GradedPoly cartan_d(const Weil& w, const GradedPoly& f) {
  const PhaseSpace& ps = w.ps();
  Derivation q;
  q.degree = 1;
  q.on_gen = [&](const Gen& g) {
    if (g.kind == w.kinds().eta) return ps.bracket(w.charge(), w.eta(g.i));
    if (g.kind == w.kinds().p) return ps.bracket(w.charge(), w.p(g.i));
    return w.zero();
  };
  for (int i = 0; i < w.n(); ++i) q.on_x.push_back(ps.bracket(w.charge(), w.x(i)));
  GradedPoly out = q.apply(f);
  for (int i = 0; i < w.n(); ++i) {
    out -= w.fp(i) * ps.bracket(w.x(i), f);
    out -= w.fx(i) * ps.bracket(w.p(i), f);
  }
  for (int a = 0; a < w.r(); ++a)
    for (int b = 0; b < w.r(); ++b)
      if (!ps.k()(a, b).is_zero())
        out -= BaseCoeff(Q(1, 2)) * ps.k()(a, b) * (w.feta(a) * ps.bracket(w.eta(b), f));
  return out;
}

bool is_invariant(const Weil& w, const GradedPoly& f) {
  for (auto& z : w.base_generators())
    if (!w.ps().bracket(w.ps().bracket(z, w.charge()), f).is_zero()) return false;
  return true;
}

CheckRecord check_cartan_model(const Weil& w, const std::vector<GradedPoly>& representatives) {
  CheckRecord rec;
  rec.check = "Cartan_model";
  rec.anchor = "d_C^2 = 0 on invariant representatives";
  Tally t(w.ps().reg());
  int skipped = 0;
  for (auto& f : representatives) {
    if (!is_invariant(w, f)) {
      ++skipped;
      continue;
    }
    t.see(cartan_d(w, cartan_d(w, f)));
  }
  t.put(rec, "dC_squared");
  rec.note("not_invariant", std::to_string(skipped));
  return rec;
}

}  // namespace gq

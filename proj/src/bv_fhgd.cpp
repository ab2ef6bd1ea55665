#include "gq/bv_fhgd.hpp"

#include <map>
#include <stdexcept>

namespace gq {

namespace {

constexpr int kMaxOrder = 6;

int max_order(const GradedPoly& f, int kind) {
  int j = -1;
  for (auto& [m, c] : f.terms())
    for (auto& fac : m)
      if (fac.g.kind == kind) j = std::max<int>(j, fac.g.j);
  return j;
}

int field_count(const BvSpace& s, int kind) {
  const BvKinds& k = s.kinds;
  if (kind == k.eta || kind == k.lam) return s.r;
  return s.n;
}

std::vector<int> field_kinds(const BvSpace& s) {
  const BvKinds& k = s.kinds;
  return {k.x, k.p, k.eta, k.xs, k.ps, k.lam};
}

}  // namespace

GradedPoly BvSpace::field(int kind, int i, int j) const {
  if (kind == kinds.x && j == 0) return GradedPoly(reg, BaseCoeff::var(i));
  return GradedPoly::gen(reg, kind, i, j);
}

BvSpace make_bv_space(int n, int r, const Tensor& k) {
  auto reg = std::make_shared<Registry>(n);
  BvKinds kinds;
  kinds.x = reg->add("x", 0, 2);
  kinds.p = reg->add("p", 2, 2);
  kinds.eta = reg->add("eta", 1, 2);
  kinds.xs = reg->add("xs", 1, 2);
  kinds.ps = reg->add("ps", -1, 2);
  kinds.lam = reg->add("lam", 0, 2);
  kinds.theta = reg->add("theta", 1, 0);
  BvSpace s;
  s.n = n;
  s.r = r;
  s.k = k;
  s.kinv = constant_inverse(k);
  s.reg = reg;
  s.kinds = kinds;
  return s;
}

GradedPoly ddt(const BvSpace& s, const GradedPoly& f) {
  Derivation d;
  d.degree = 0;
  d.on_gen = [&](const Gen& g) {
    if (g.kind == s.kinds.theta) return s.zero();
    if (g.j + 1 > kMaxOrder) throw std::logic_error("derivative order bound exceeded");
    return s.field(g.kind, g.i, g.j + 1);
  };
  for (int i = 0; i < s.n; ++i) d.on_x.push_back(s.xdot(i));
  return d.apply(f);
}

GradedPoly euler(const BvSpace& s, const GradedPoly& f, int kind, int i, bool left) {
  GradedPoly out = s.zero();
  int top = max_order(f, kind);
  int start = 0;
  if (kind == s.kinds.x) {
    out = f.partial_x(i);
    start = 1;
  }
  for (int j = start; j <= top; ++j) {
    Gen g{static_cast<std::int16_t>(kind), static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)};
    GradedPoly d = left ? f.derive_left(g) : f.derive_right(g);
    if (d.is_zero()) continue;
    for (int t = 0; t < j; ++t) d = ddt(s, d);
    if (j % 2) out -= d;
    else out += d;
  }
  return out;
}

GradedPoly normal_form(const BvSpace& s, const GradedPoly& f) {
  std::map<int, GradedPoly> parts;
  for (auto& [m, c] : f.terms()) {
    int gd = 0;
    for (auto& fac : m) gd += fac.pow;
    for (auto& [e, q] : c.terms()) {
      int d = gd;
      for (auto v : e) d += v;
      auto it = parts.try_emplace(d, s.zero()).first;
      it->second.add_term(m, BaseCoeff::monomial(e, q));
    }
  }
  GradedPoly out = s.zero();
  for (auto& [d, part] : parts) {
    if (d == 0) {
      out += part;
      continue;
    }
    GradedPoly acc = s.zero();
    for (int kind : field_kinds(s))
      for (int i = 0; i < field_count(s, kind); ++i) {
        GradedPoly e = euler(s, part, kind, i, true);
        if (!e.is_zero()) acc += s.field(kind, i) * e;
      }
    out += acc * BaseCoeff(Q(1, d));
  }
  return out;
}

bool equal_mod_total(const BvSpace& s, const GradedPoly& f, const GradedPoly& g) {
  return normal_form(s, f - g).is_zero();
}

GradedPoly integrate_by_parts(const BvSpace& s, const GradedPoly& f, const std::vector<int>& kind_order) {
  GradedPoly cur = f;
  for (int pass = 0; pass < 8; ++pass) {
    GradedPoly next = s.zero();
    bool changed = false;
    for (auto& [m, c] : cur.terms()) {
      GradedPoly term = s.zero();
      term.add_term(m, c);
      int derived = 0;
      for (auto& fac : m)
        if (fac.g.j > 0) derived += fac.pow;
      const Factor* pick = nullptr;
      if (derived == 1)
        for (int kind : kind_order) {
          for (auto& fac : m)
            if (fac.g.kind == kind && fac.g.j > 0) pick = &fac;
          if (pick) break;
        }
      if (!pick) {
        next += term;
        continue;
      }
      Gen g = pick->g;
      GradedPoly rest = term.derive_left(g);
      next -= s.field(g.kind, g.i, g.j - 1) * ddt(s, rest);
      changed = true;
    }
    cur = next;
    if (!changed) break;
  }
  return cur;
}

Superfields superfield_extend(const BvSpace& s) {
  Superfields z;
  GradedPoly th = s.theta();
  for (int i = 0; i < s.n; ++i) {
    z.X.push_back(s.field(s.kinds.x, i) - th * s.ps(i));
    z.P.push_back(s.p(i) + th * s.xs(i));
  }
  for (int a = 0; a < s.r; ++a) z.Y.push_back(s.eta(a) - th * s.lam(a));
  return z;
}

GradedPoly extend(const BvSpace& s, const PhaseSpace& ps, const GradedPoly& f) {
  Superfields z = superfield_extend(s);
  std::vector<GradedPoly> shift;
  for (int i = 0; i < s.n; ++i) shift.push_back(z.X[i] - s.field(s.kinds.x, i));
  return substitute(f, s.reg, [&](const Gen& g) -> std::optional<GradedPoly> {
    if (g.kind == ps.kinds().p) return z.P[g.i];
    if (g.kind == ps.kinds().eta) return z.Y[g.i];
    throw std::logic_error("unexpected generator in a BFV function");
  }, shift);
}

GradedPoly berezin_integrate(const BvSpace& s, const GradedPoly& expr) {
  return expr.derive_left(Gen{static_cast<std::int16_t>(s.kinds.theta), 0, 0});
}

namespace {

struct CanonicalBfv {
  PhaseSpace ps;
  GradedPoly S, H;
};

CanonicalBfv canonical_bfv(const BfvModel& m, const Tensor& A) {
  const CourantData& cd = m.cd;
  if (!(exterior_d(A, cd.n) == m.B)) throw std::invalid_argument("Liouville form does not match the twist: dA != B");
  for (std::size_t q = 0; q < cd.k.size(); ++q)
    if (!cd.k.flat(q).is_constant()) throw std::invalid_argument("k_ab must be constant");
  PhaseSpace ps = make_phase_space(cd);
  auto shift_p = [&](const GradedPoly& f) {
    return substitute(f, ps.reg(), [&](const Gen& g) -> std::optional<GradedPoly> {
      if (g.kind != ps.kinds().p) return std::nullopt;
      return ps.p(g.i) + ps.constant(A(g.i));
    });
  };
  return {ps, shift_p(build_s_bfv(ps, cd, m.mu)), shift_p(build_h_bfv(ps, m.G, m.g, m.Vp, m.U))};
}

}  // namespace

BvAction build_s_bv(const BfvModel& m, const Tensor& A) {
  auto [ps, S, H] = canonical_bfv(m, A);
  BvSpace s = make_bv_space(m.cd.n, m.cd.r, m.cd.k);
  Superfields z = superfield_extend(s);
  GradedPoly th = s.theta();
  GradedPoly L = s.zero();
  for (int i = 0; i < s.n; ++i) L += z.P[i] * th * s.xdot(i);
  for (int a = 0; a < s.r; ++a)
    for (int b = 0; b < s.r; ++b)
      if (!s.k(a, b).is_zero()) L -= s.constant(Q(1, 2) * s.k(a, b)) * z.Y[a] * th * s.eta(b, 1);
  L -= extend(s, ps, S);
  L -= th * extend(s, ps, H);
  return BvAction{s, berezin_integrate(s, L)};
}

GradedPoly master_from_bfv(const BvSpace& s, const BfvModel& m, const Tensor& A) {
  auto [ps, S, H] = canonical_bfv(m, A);
  GradedPoly img = extend(s, ps, ps.bracket(S, S)) - s.theta() * extend(s, ps, ps.bracket(S, H)) * BaseCoeff(2);
  return normal_form(s, berezin_integrate(s, img));
}

GradedPoly antibracket(const BvSpace& s, const GradedPoly& F, const GradedPoly& G) {
  const BvKinds& k = s.kinds;
  GradedPoly out = s.zero();
  auto pair = [&](int kf, int i, int ka, int j, const BaseCoeff& w) {
    GradedPoly a = euler(s, F, kf, i, false), b = euler(s, G, ka, j, true);
    if (!a.is_zero() && !b.is_zero()) out += w * (a * b);
    GradedPoly c = euler(s, F, ka, j, false), d = euler(s, G, kf, i, true);
    if (!c.is_zero() && !d.is_zero()) out -= w * (c * d);
  };
  for (int i = 0; i < s.n; ++i) {
    pair(k.x, i, k.xs, i, BaseCoeff(1));
    pair(k.p, i, k.ps, i, BaseCoeff(1));
  }
  for (int a = 0; a < s.r; ++a)
    for (int b = 0; b < s.r; ++b)
      if (!s.kinv(a, b).is_zero()) pair(k.eta, a, k.lam, b, -s.kinv(a, b));
  return normal_form(s, out);
}

GradedPoly master_equation_residual(const BvAction& a) { return antibracket(a.space, a.density, a.density); }

GradedPoly restrict_to_zero(const BvSpace& s, const GradedPoly& f, const std::vector<int>& kinds) {
  (void)s;
  return f.select([&](const Mono& m) {
    for (int kind : kinds)
      if (GradedPoly::count(m, kind) != 0) return false;
    return true;
  });
}

GradedPoly classical_limit(const BvAction& a) {
  const BvKinds& k = a.space.kinds;
  return restrict_to_zero(a.space, a.density, {k.xs, k.ps, k.eta});
}

ClassicalParts classical_parts(const BvSpace& s, const GradedPoly& residual) {
  const BvKinds& k = s.kinds;
  GradedPoly f = restrict_to_zero(s, residual, {k.xs, k.ps});
  ClassicalParts out{s.zero(), s.zero(), s.zero()};
  for (auto& [m, c] : f.terms()) {
    int l = GradedPoly::count(m, k.lam), e = GradedPoly::count(m, k.eta);
    GradedPoly& dst = (l == 1 && e == 1) ? out.lambda_eta : (l == 0 && e == 1) ? out.eta : out.rest;
    dst.add_term(m, c);
  }
  return out;
}

CheckRecord check_bv_master(const BfvModel& m, const Tensor& A) {
  BvAction act = build_s_bv(m, A);
  GradedPoly res = master_equation_residual(act);
  ClassicalParts parts = classical_parts(act.space, res);
  CheckRecord rec;
  rec.check = "BV_master";
  rec.anchor = "(S_BV, S_BV) = 0 modulo total derivatives";
  rec.add("master", res);
  rec.add("antifield_free_lambda_eta", parts.lambda_eta, true);
  rec.add("antifield_free_eta", parts.eta, true);
  return rec;
}

}  // namespace gq

#include "gq/bfv.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gq {

namespace {

GradedPoly gamma_pair(const PhaseSpace& ps, const Tensor& L, int i) {
  GradedPoly s = ps.zero();
  for (int a = 0; a < ps.r(); ++a)
    for (int b = 0; b < ps.r(); ++b)
      if (a != b && !L(a, b, i).is_zero()) s += ps.constant(Q(1, 2) * L(a, b, i)) * ps.eta(a) * ps.eta(b);
  return s;
}

GradedPoly eta_mu(const PhaseSpace& ps, const std::optional<Tensor>& mu) {
  GradedPoly s = ps.zero();
  if (!mu) return s;
  for (int a = 0; a < ps.r(); ++a)
    if (!(*mu)(a).is_zero()) s += ps.constant((*mu)(a)) * ps.eta(a);
  return s;
}

int sign_of(const std::vector<int>& perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

int max_degree(const Tensor& t) {
  int d = 0;
  for (std::size_t k = 0; k < t.size(); ++k) d = std::max(d, t.flat(k).total_degree());
  return d;
}

}  // namespace

GradedPoly covariant_momentum(const PhaseSpace& ps, const Connection& G, int i) {
  return ps.p(i) + gamma_pair(ps, lowered_connection(G, ps.k()), i);
}

GradedPoly to_covariant(const PhaseSpace& ps, const Connection& G, const GradedPoly& f) {
  Tensor L = lowered_connection(G, ps.k());
  return substitute(f, ps.reg(), [&](const Gen& g) -> std::optional<GradedPoly> {
    if (g.kind != ps.kinds().p) return std::nullopt;
    return ps.p(g.i) - gamma_pair(ps, L, g.i);
  });
}

GradedPoly build_s_bfv(const PhaseSpace& ps, const CourantData& cd, const std::optional<Tensor>& mu) {
  return build_theta(ps, cd) + eta_mu(ps, mu);
}

GradedPoly build_s_bfv_covariant(const PhaseSpace& ps, const CourantData& cd, const Connection& G,
                                 const std::optional<Tensor>& mu) {
  GradedPoly s = ps.zero();
  std::vector<GradedPoly> pn;
  for (int i = 0; i < cd.n; ++i) pn.push_back(covariant_momentum(ps, G, i));
  for (int a = 0; a < cd.r; ++a)
    for (int i = 0; i < cd.n; ++i)
      if (!cd.rho(i, a).is_zero()) s += ps.constant(cd.rho(i, a)) * ps.eta(a) * pn[i];
  s -= eta_form(ps, e_torsion(cd, G), false) * BaseCoeff(Q(1, 6));
  return s + eta_mu(ps, mu);
}

GradedPoly build_h_bfv(const PhaseSpace& ps, const Connection& G, const Tensor& g, const BaseCoeff& Vp,
                       const std::optional<Tensor>& U) {
  GradedPoly h = ps.constant(Vp);
  std::vector<GradedPoly> pn;
  for (int i = 0; i < ps.n(); ++i) pn.push_back(covariant_momentum(ps, G, i));
  for (int i = 0; i < ps.n(); ++i)
    for (int j = 0; j < ps.n(); ++j)
      if (!g(i, j).is_zero()) h += ps.constant(Q(1, 2) * g(i, j)) * pn[i] * pn[j];
  if (U) h += eta_form(ps, *U, false) * BaseCoeff(Q(1, 24));
  return h;
}

BfvResiduals bfv_residuals(const PhaseSpace& ps, const GradedPoly& S, const GradedPoly& H) {
  BfvResiduals r{ps.bracket(S, S), ps.bracket(S, H), ps.bracket(H, H)};
  if (!r.r3.is_zero()) throw std::logic_error("{H,H} of an even function is not zero: " + r.r3.str());
  return r;
}

Buckets split_buckets(const PhaseSpace& ps, const GradedPoly& f) {
  Buckets out;
  for (auto& [m, c] : f.terms()) {
    auto key = std::make_pair(GradedPoly::count(m, ps.kinds().eta), GradedPoly::count(m, ps.kinds().p));
    auto it = out.try_emplace(key, ps.zero()).first;
    it->second.add_term(m, c);
  }
  return out;
}

GradedPoly bucket(const Buckets& b, int eta, int p, const PhaseSpace& ps) {
  auto it = b.find({eta, p});
  return it == b.end() ? ps.zero() : it->second;
}

GradedPoly eta_form(const PhaseSpace& ps, const Tensor& t, bool with_p) {
  GradedPoly s = ps.zero();
  for (auto& [idx, v] : t.nonzero()) {
    GradedPoly term = ps.constant(v);
    std::size_t k = 0;
    if (with_p) term = term * ps.p(idx[k++]);
    for (; k < idx.size(); ++k) term = term * ps.eta(idx[k]);
    s += term;
  }
  return s;
}

Tensor alternate(const Tensor& t, int first, int count) {
  Tensor out(t.shape());
  std::vector<int> perm(count);
  std::iota(perm.begin(), perm.end(), 0);
  Q fact = 1;
  for (int k = 2; k <= count; ++k) fact *= k;
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto idx = t.unflatten(k);
    BaseCoeff v;
    std::vector<int> p = perm;
    do {
      auto j = idx;
      for (int s = 0; s < count; ++s) j[first + s] = idx[first + p[s]];
      const BaseCoeff& tv = t.at(j);
      if (tv.is_zero()) continue;
      if (sign_of(p) > 0) v += tv;
      else v -= tv;
    } while (std::next_permutation(p.begin(), p.end()));
    v *= Q(1) / fact;
    out.flat(k) = v;
  }
  return out;
}

Tensor bfv_curvature(const CourantData& cd, const Connection& G) {
  int n = cd.n, r = cd.r;
  Tensor T = e_torsion(cd, G);
  Tensor R = curvature(G);
  Tensor RL({r, n, n, r});
  for (int c = 0; c < r; ++c)
    for (int d = 0; d < r; ++d)
      if (!cd.k(c, d).is_zero())
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int b = 0; b < r; ++b) RL(c, i, j, b) += cd.k(c, d) * R(d, i, j, b);
  Tensor X({n, r, r, r});
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c) {
          BaseCoeff v = T(a, b, c).partial(j);
          for (int d = 0; d < r; ++d)
            v -= G(d, a, j) * T(d, b, c) + G(d, b, j) * T(a, d, c) + G(d, c, j) * T(a, b, d);
          for (int i = 0; i < n; ++i)
            v += cd.rho(i, a) * RL(c, i, j, b) + cd.rho(i, b) * RL(a, i, j, c) + cd.rho(i, c) * RL(b, i, j, a);
          X(j, a, b, c) = v;
        }
  return X;
}

UResiduals u_equations_residual(const CourantData& cd, const Connection& G, const Tensor& g, const Tensor& U) {
  int n = cd.n, r = cd.r;
  Tensor kinv = constant_inverse(cd.k);
  Tensor S = basic_curvature(cd, G);
  Tensor X = bfv_curvature(cd, G);
  UResiduals out{Tensor({n, r, r, r}), Tensor({n, r, r, r}), Tensor({r, r, r, r, r})};
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c) {
          BaseCoeff u;
          for (int d = 0; d < r; ++d)
            for (int e = 0; e < r; ++e) u += cd.rho(i, d) * kinv(d, e) * U(e, a, b, c);
          BaseCoeff lit = u, ex = u;
          for (int j = 0; j < n; ++j) {
            if (g(i, j).is_zero()) continue;
            ex -= g(i, j) * X(j, a, b, c);
            for (int d = 0; d < r; ++d) lit -= g(i, j) * S(d, j, a, b) * cd.k(d, c);
          }
          out.res1(i, a, b, c) = ex;
          out.res1_literal(i, a, b, c) = lit;
        }
  out.res1 = alternate(out.res1, 1, 3);
  if (r < 5) return out;
  Tensor T = e_torsion(cd, G);
  Tensor P({r, r, r, r, r});
  for (std::size_t k = 0; k < P.size(); ++k) {
    auto x = P.unflatten(k);
    int a = x[0];
    BaseCoeff v;
    for (int i = 0; i < n; ++i) {
      if (cd.rho(i, a).is_zero()) continue;
      BaseCoeff d = U(x[1], x[2], x[3], x[4]).partial(i);
      for (int h = 0; h < r; ++h)
        d -= G(h, x[1], i) * U(h, x[2], x[3], x[4]) + G(h, x[2], i) * U(x[1], h, x[3], x[4]) +
             G(h, x[3], i) * U(x[1], x[2], h, x[4]) + G(h, x[4], i) * U(x[1], x[2], x[3], h);
      v += cd.rho(i, a) * d;
    }
    for (int f = 0; f < r; ++f)
      for (int h = 0; h < r; ++h) v -= 2 * kinv(f, h) * T(f, x[0], x[1]) * U(x[2], x[3], x[4], h);
    P.flat(k) = v;
  }
  out.res2 = alternate(P, 0, 5);
  return out;
}

Tensor mu_u_coupling(const CourantData& cd, const Tensor& mu, const Tensor& U) {
  int r = cd.r;
  Tensor kinv = constant_inverse(cd.k);
  Tensor out({r, r, r});
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int e = 0; e < r; ++e)
          for (int f = 0; f < r; ++f) out(a, b, c) += kinv(e, f) * mu(e) * U(f, a, b, c);
  return out;
}

Tensor four_form(int r, int a, int b, int c, int d, const BaseCoeff& v) {
  Tensor U({r, r, r, r});
  std::vector<int> p{0, 1, 2, 3}, base{a, b, c, d};
  do {
    BaseCoeff w = v;
    if (sign_of(p) < 0) w = -w;
    U(base[p[0]], base[p[1]], base[p[2]], base[p[3]]) = w;
  } while (std::next_permutation(p.begin(), p.end()));
  return U;
}

int default_u_degree(const CourantData& cd, const Connection& G, const Tensor& g) {
  return std::max({max_degree(cd.rho), max_degree(g), max_degree(bfv_curvature(cd, G))}) + 1;
}

namespace {

std::vector<Exps> monomials_upto(int n, int deg) {
  std::vector<Exps> out{Exps{}};
  for (int d = 1; d <= deg; ++d) {
    std::vector<Exps> next;
    for (auto& e : out) {
      int s = 0;
      for (auto v : e) s += v;
      if (s != d - 1) continue;
      int last = 0;
      for (int i = 0; i < static_cast<int>(e.size()); ++i)
        if (e[i]) last = i;
      for (int i = last; i < n; ++i) {
        Exps f = e;
        if (static_cast<int>(f.size()) <= i) f.resize(i + 1, 0);
        ++f[i];
        next.push_back(f);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

Exps add_exps(const Exps& a, const Exps& b) {
  Exps c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  return c;
}

}  // namespace

USolution solve_u_linear(const CourantData& cd, const Connection& G, const Tensor& g, int max_degree) {
  if (max_degree < 0 || max_degree > 6) throw std::invalid_argument("degree bound exceeded: " + std::to_string(max_degree));
  int n = cd.n, r = cd.r;
  USolution sol;
  std::vector<std::array<int, 4>> quads;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int c = b + 1; c < r; ++c)
        for (int d = c + 1; d < r; ++d) quads.push_back({a, b, c, d});
  auto monos = monomials_upto(n, max_degree);
  int nvars = static_cast<int>(quads.size() * monos.size());

  // basis four-forms; U_eabc = sum over quads of sign * unknown polynomial
  Tensor kinv = constant_inverse(cd.k);
  Tensor X = alternate(bfv_curvature(cd, G), 1, 3);
  using Key = std::pair<std::array<int, 4>, Exps>;
  std::map<Key, std::pair<std::map<int, Q>, Q>> eqs;
  auto quad_of = [&](std::array<int, 4> idx, int& sign) -> int {
    std::vector<int> v(idx.begin(), idx.end());
    sign = sign_of(std::vector<int>{0, 1, 2, 3});
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        if (v[i] == v[j]) return -1;
        if (v[i] > v[j]) sign = -sign;
      }
    std::sort(v.begin(), v.end());
    for (std::size_t q = 0; q < quads.size(); ++q)
      if (std::equal(v.begin(), v.end(), quads[q].begin())) return static_cast<int>(q);
    return -1;
  };
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c) {
          std::array<int, 4> row{i, a, b, c};
          for (int e = 0; e < r; ++e) {
            BaseCoeff w;
            for (int d = 0; d < r; ++d) w += cd.rho(i, d) * kinv(d, e);
            if (w.is_zero()) continue;
            int sign = 1;
            int q = quad_of({e, a, b, c}, sign);
            if (q < 0) continue;
            for (auto& [we, wc] : w.terms())
              for (std::size_t m = 0; m < monos.size(); ++m) {
                auto& entry = eqs[{row, add_exps(we, monos[m])}];
                entry.first[static_cast<int>(q * monos.size() + m)] += sign * wc;
              }
          }
          BaseCoeff rhs;
          for (int j = 0; j < n; ++j)
            if (!g(i, j).is_zero()) rhs += g(i, j) * X(j, a, b, c);
          for (auto& [e, v] : rhs.terms()) eqs[{row, e}].second += v;
        }
  std::vector<SparseRow> rows;
  std::vector<Q> rhs;
  std::vector<Key> keys;
  for (auto& [key, eq] : eqs) {
    SparseRow row;
    for (auto& [v, c] : eq.first)
      if (c != 0) row.entries.emplace_back(v, c);
    if (row.entries.empty() && eq.second == 0) continue;
    rows.push_back(row);
    rhs.push_back(eq.second);
    keys.push_back(key);
  }
  LinearResult lr = solve_linear(rows, rhs, nvars);
  if (!lr.feasible) {
    auto& [idx, e] = keys[lr.bad_row];
    sol.certificate = "no U of degree <= " + std::to_string(max_degree) + " solves component [" +
                      std::to_string(idx[0] + 1) + "," + std::to_string(idx[1] + 1) + "," +
                      std::to_string(idx[2] + 1) + "," + std::to_string(idx[3] + 1) + "], coefficient of " +
                      BaseCoeff::monomial(e, 1).str();
    return sol;
  }
  sol.feasible = true;
  sol.U = Tensor({r, r, r, r});
  for (std::size_t q = 0; q < quads.size(); ++q) {
    BaseCoeff v;
    for (std::size_t m = 0; m < monos.size(); ++m) {
      const Q& c = lr.solution[q * monos.size() + m];
      if (c != 0) v += BaseCoeff::monomial(monos[m], c);
    }
    if (!v.is_zero()) sol.U += four_form(r, quads[q][0], quads[q][1], quads[q][2], quads[q][3], v);
  }
  sol.residuals = u_equations_residual(cd, G, g, sol.U);
  return sol;
}

CheckRecord check_bfv(const BfvModel& m) {
  const CourantData& cd = m.cd;
  PhaseSpace ps = make_phase_space(cd, m.B.is_zero() ? std::nullopt : std::optional<Tensor>(m.B));
  GradedPoly S = build_s_bfv(ps, cd, m.mu);
  GradedPoly H = build_h_bfv(ps, m.G, m.g, m.Vp, m.U);
  BfvResiduals res = bfv_residuals(ps, S, H);

  CheckRecord rec;
  rec.check = "BFV";
  rec.anchor = "{S,S} = 0, {S,H} = 0, {H,H} = 0";
  Buckets b1 = split_buckets(ps, res.r1);
  GradedPoly courant = bucket(b1, 4, 0, ps) + bucket(b1, 2, 1, ps) + bucket(b1, 0, 2, ps);
  rec.add("SS_courant", courant);
  rec.add("SS_H3", bucket(b1, 2, 0, ps));
  rec.add("SS_rho_mu_star", bucket(b1, 0, 1, ps));
  rec.add("SS_mu_norm", bucket(b1, 0, 0, ps));

  Buckets b2 = split_buckets(ps, to_covariant(ps, m.G, res.r2));
  const std::vector<std::pair<std::pair<int, int>, std::string>> named = {
      {{1, 2}, "SH_EDg"}, {{1, 1}, "SH_H2"}, {{1, 0}, "SH_EdV"},
      {{3, 1}, "SH_U1"},  {{3, 0}, "SH_mu_U"}, {{5, 0}, "SH_U2"}};
  GradedPoly other = ps.zero();
  for (auto& [key, part] : b2) {
    bool known = std::any_of(named.begin(), named.end(), [&](auto& nm) { return nm.first == key; });
    if (!known) other += part;
  }
  for (auto& [key, name] : named) rec.add(name, bucket(b2, key.first, key.second, ps));
  rec.add("SH_other", other);
  rec.add("HH", res.r3);
  return rec;
}

}  // namespace gq

// Acceptance run: one line per criterion, then a summary. Exits 0 when every
// criterion ends as recorded in kExpectedFailures.
#include <filesystem>
#include <iostream>
#include <random>
#include <set>

#include "gq/cli.hpp"
#include "gq/momentum.hpp"
#include "gq/weil.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gq;
namespace fs = std::filesystem;

namespace {

const std::set<int> kExpectedFailures = {8};

struct Criterion {
  int id;
  std::string title;
  int checks = 0;
  std::vector<std::string> failed;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failed.push_back(what);
  }
  bool pass() const { return failed.empty(); }
};

BaseCoeff x(int i) { return BaseCoeff::var(i); }

std::string model_path(const std::string& name) { return std::string(MODELS_DIR) + "/" + name; }
Model load(const std::string& name) { return build_model(load_spec(model_path(name))); }

std::vector<std::string> bundled() {
  std::vector<std::string> out;
  for (auto& e : fs::directory_iterator(MODELS_DIR))
    if (e.path().extension() == ".spec") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

bool theta_closed(const CourantData& cd) {
  PhaseSpace ps = make_phase_space(cd);
  GradedPoly th = build_theta(ps, cd);
  return ps.bracket(th, th).is_zero();
}

std::vector<Gen> phase_gens(const PhaseSpace& ps) {
  std::vector<Gen> g;
  for (int a = 0; a < ps.r(); ++a) g.push_back(Gen{static_cast<std::int16_t>(ps.kinds().eta), static_cast<std::int16_t>(a), 0});
  for (int i = 0; i < ps.n(); ++i) g.push_back(Gen{static_cast<std::int16_t>(ps.kinds().p), static_cast<std::int16_t>(i), 0});
  return g;
}

Tensor random_form(std::mt19937& rng, int n, int rank) {
  Tensor w(std::vector<int>(static_cast<std::size_t>(rank), n));
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (std::size_t q = 0; q < w.size(); ++q) {
    idx = w.unflatten(q);
    if (!std::is_sorted(idx.begin(), idx.end()) || std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
    if (rng() % 2) continue;
    BaseCoeff v = testing::random_coeff(rng, n, 2);
    std::vector<int> perm = idx;
    do {
      std::vector<int> t = perm;
      int sign = 1;
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b)
          if (t[a] > t[b]) sign = -sign;
      w.at(perm) = sign > 0 ? v : -v;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return w;
}

// Support of {Theta,Theta} as sorted eta index tuples, against the support
// of dh, with one common ratio between coefficients.
bool support_matches(const CourantData& cd, const Tensor& h) {
  PhaseSpace ps = make_phase_space(cd);
  GradedPoly th = build_theta(ps, cd);
  GradedPoly tt = ps.bracket(th, th);
  Tensor dh = oracle::exterior_d3(h, cd.n);
  std::map<std::vector<int>, BaseCoeff> lhs, rhs;
  for (auto& [m, c] : tt.terms()) {
    std::vector<int> idx;
    for (auto& f : m) {
      if (f.g.kind != ps.kinds().eta) return false;
      idx.push_back(f.g.i);
    }
    lhs[idx] = c;
  }
  for (auto& [idx, v] : dh.nonzero())
    if (std::is_sorted(idx.begin(), idx.end())) rhs[idx] = v;
  if (lhs.size() != rhs.size() || lhs.empty()) return false;
  std::optional<Q> ratio;
  for (auto& [idx, v] : rhs) {
    auto it = lhs.find(idx);
    if (it == lhs.end()) return false;
    for (Q r : {Q(2), Q(-2), Q(1), Q(-1)})
      if (it->second == v * BaseCoeff(r)) {
        if (ratio && *ratio != r) return false;
        ratio = r;
      }
    if (!ratio) return false;
  }
  return true;
}

Criterion c1() {
  Criterion c{1, "Courant axioms iff {Theta,Theta} = 0"};
  for (auto name : {"standard_h0.spec", "standard_hconst.spec", "so3.spec"}) {
    Model m = load(name);
    c.expect(verify_courant_axioms(m.cd).pass(), std::string(name) + " axioms");
    c.expect(theta_closed(m.cd), std::string(name) + " theta");
  }
  Model bad = load("standard_h_nonclosed.spec");
  c.expect(!verify_courant_axioms(bad.cd).pass(), "nonclosed axioms fail");
  c.expect(!theta_closed(bad.cd), "nonclosed theta fails");
  Tensor h({4, 4, 4});
  h(0, 1, 2) = h(1, 2, 0) = h(2, 0, 1) = x(3);
  h(1, 0, 2) = h(0, 2, 1) = h(2, 1, 0) = -x(3);
  c.expect(support_matches(bad.cd, h), "nonclosed support");

  std::mt19937 rng(101);
  int closed = 0, open = 0;
  for (int t = 0; t < 12; ++t) {
    bool exact = t % 2 == 0;
    Tensor ht = exact ? exterior_d(random_form(rng, 4, 2), 4) : random_form(rng, 4, 3);
    CourantData cd = standard_courant(4, ht);
    bool ax = verify_courant_axioms(cd).pass(), th = theta_closed(cd);
    bool dclosed = oracle::exterior_d3(ht, 4).is_zero();
    c.expect(ax == th, "random twist " + std::to_string(t) + " equivalence");
    c.expect(th == dclosed, "random twist " + std::to_string(t) + " closedness");
    if (!dclosed) c.expect(support_matches(cd, ht), "random twist " + std::to_string(t) + " support");
    (th ? closed : open)++;
  }
  c.expect(closed > 0 && open > 0, "both directions witnessed");
  return c;
}

Criterion c2() {
  Criterion c{2, "first-class closure and realized Jacobi"};
  for (auto name : {"so2_angmom.spec", "so3_rot.spec", "cartan_oscillator.spec", "standard_h0.spec", "so3.spec",
                    "line_curved.spec"}) {
    Model m = load(name);
    c.expect(first_class_residual(m.cd, m.mech).is_zero(), std::string(name) + " closure");
    bool jac = true;
    for (auto& r : realized_jacobi(m.cd, m.mech)) jac = jac && r.is_zero();
    c.expect(jac, std::string(name) + " jacobi");
  }
  CourantData std2 = standard_courant(2, Tensor({2, 2, 2}));
  MechanicsData m = zero_mechanics(2, 4);
  m.alpha(0) = x(0) * x(1);
  m.alpha(1) = BaseCoeff(Q(1, 2)) * x(0) * x(0);
  c.expect(first_class_residual(std2, m).is_zero(), "standard closed section closure");
  for (auto& r : realized_jacobi(std2, m)) c.expect(r.is_zero(), "standard closed section jacobi");
  Model neg = load("oscillator_mu_central.spec");
  c.expect(!first_class_residual(neg.cd, neg.mech).is_zero(), "central section breaks closure");
  return c;
}

Criterion c3() {
  Criterion c{3, "p^2 part of {H,G} equals E D g"};
  std::vector<std::pair<std::string, Model>> models;
  for (auto name : {"so2_angmom.spec", "so3_rot.spec", "cartan_oscillator.spec", "line_curved.spec"})
    models.emplace_back(name, load(name));
  Model warped = load("so3_rot.spec");
  warped.mech.g(0, 0) = BaseCoeff(1) + x(0) * x(0);
  models.emplace_back("so3_rot warped metric", warped);
  Model twisted = load("line_curved.spec");
  twisted.mech.g(0, 0) = BaseCoeff(1) + x(0);
  models.emplace_back("line_curved warped metric", twisted);
  int nonzero = 0;
  for (auto& [name, m] : models) {
    Tensor p2 = symmetry_residual(m.cd, m.G, m.mech).by_p_order[2];
    c.expect(p2 == e_connection_on_metric(m.cd, m.G, m.mech.g), name + " geometry");
    c.expect(p2 == oracle::e_d_metric(m.cd, m.G, m.mech.g), name + " oracle");
    if (!p2.is_zero()) ++nonzero;
  }
  c.expect(nonzero >= 2, "failing models included");
  return c;
}

Criterion c4() {
  Criterion c{4, "p'-order decomposition on every bundled example"};
  for (auto& name : bundled()) {
    Model m = load(name);
    BracketResidual sr = symmetry_residual(m.cd, m.G, m.mech);
    BracketResidual fc = first_class_residual(m.cd, m.mech);
    c.expect(sr.by_p_order[1] == raise_h2(m.mech.g, h2_residual(m.cd, m.G, m.abs.B, m.abs.mu)), name + " H2");
    c.expect(sr.by_p_order[0] == e_d_potential(m.cd, m.abs.V), name + " EdV'");
    c.expect(fc.by_p_order[0] == h3_residual(m.cd, m.abs.B, m.abs.mu), name + " H3");
  }
  return c;
}

Criterion c5() {
  Criterion c{5, "momentum-map reduction on trivial bundles"};
  Model so2 = load("so2_angmom.spec");
  Model so3 = load("so3_rot.spec");
  std::mt19937 rng(55);
  for (Model* m : {&so2, &so3}) {
    const CourantData& cd = m->cd;
    Connection G = zero_connection(cd.n, cd.r);
    for (int t = 0; t < 8; ++t) {
      Tensor mu({cd.r});
      for (int a = 0; a < cd.r; ++a) mu(a) = testing::random_coeff(rng, cd.n, 2);
      Tensor B = t % 2 ? m->abs.B : Tensor({cd.n, cd.n});
      Tensor h2 = h2_residual(cd, G, B, mu);
      c.expect(h2 == oracle::momentmap_h2(cd, B, mu), "H2 oracle");
      c.expect(h2 == momentmap_h2(cd, B, mu), "H2 module");
      Tensor h3 = h3_residual(cd, B, mu), eq = oracle::equivariance(cd, mu);
      c.expect(eq == momentmap_equivariance(cd, mu), "equivariance module");
      bool rel = true;
      for (int a = 0; a < cd.r; ++a)
        for (int b = 0; b < cd.r; ++b) {
          BaseCoeff v = eq(a, b);
          for (int i = 0; i < cd.n; ++i) v += cd.rho(i, b) * h2(i, a);
          rel = rel && h3(a, b) == v;
        }
      c.expect(rel, "H3 = equivariance + rho H2");
    }
  }
  c.expect(check_h1(so2.cd, so2.G, so2.abs.B).pass(), "angular momentum H1");
  c.expect(check_h2(so2.cd, so2.G, so2.abs.B, so2.abs.mu).pass(), "angular momentum H2");
  c.expect(check_h3(so2.cd, so2.abs.B, so2.abs.mu).pass(), "angular momentum H3");
  c.expect(classify(so2.cd, so2.G, so2.abs.B, so2.abs.mu).cls == MomentumClass::Hamiltonian, "angular momentum class");
  c.expect(full_consistency(so2.cd, so2.G, so2.mech).pass(), "angular momentum mechanics");
  return c;
}

std::vector<std::string> failing(const CheckRecord& rec) {
  std::vector<std::string> out;
  for (auto& r : rec.residuals)
    if (!r.zero && !r.informational) out.push_back(r.name);
  return out;
}

Criterion c6() {
  Criterion c{6, "BFV residuals"};
  Model osc = load("cartan_oscillator.spec");
  CheckRecord base = check_bfv(osc.bfv());
  c.expect(osc.U.is_zero() && base.pass(), "Cartan model residuals");
  for (auto& r : base.residuals) c.expect(r.zero, "Cartan component " + r.name);
  using Names = std::vector<std::string>;
  struct Perturb {
    int a;
    BaseCoeff v;
    Names expect;
  };
  std::vector<Perturb> ps = {{0, BaseCoeff(1) + x(0), {"SH_H2"}},
                             {3, BaseCoeff(1), {"SS_H3"}},
                             {1, BaseCoeff(1), {"SS_H3", "SS_mu_norm"}}};
  for (auto& p : ps) {
    BfvModel m = osc.bfv();
    if (p.a != 0) m.mu(0) = BaseCoeff();
    m.mu(p.a) = p.v;
    c.expect(failing(check_bfv(m)) == p.expect, "perturbation of mu_" + std::to_string(p.a + 1));
  }
  Model line = load("line_curved_U.spec");
  BfvModel lm = line.bfv();
  lm.mu(0) = BaseCoeff(3);
  c.expect(!lm.U.is_zero(), "U nonzero");
  int agree = 0, holds = 0, breaks = 0;
  for (int k = -2; k <= 4; ++k)
    for (int k0 = 0; k0 <= 1; ++k0) {
      BfvModel m = lm;
      m.U = four_form(4, 0, 1, 2, 3, x(0) * Q(k) + BaseCoeff(k0));
      bool ueq = u_equations_residual(m.cd, m.G, m.g, m.U).zero();
      bool sh = true;
      for (auto& r : check_bfv(m).residuals)
        if (r.name == "SH_U1" || r.name == "SH_U2") sh = sh && r.zero;
      agree += ueq == sh;
      (ueq ? holds : breaks)++;
    }
  c.expect(agree == 14, "U equations iff {S,H} U parts vanish");
  c.expect(holds > 0 && breaks > 0, "both directions witnessed");
  return c;
}

Criterion c7() {
  Criterion c{7, "BV action, classical limit, master equation"};
  for (auto name : {"line_curved_U.spec", "so3_rot.spec", "standard_h0.spec"}) {
    Model m = load(name);
    BvAction a = build_s_bv(m.bfv(), m.abs.A);
    c.expect(a.density == oracle::bv_density(a.space, m.bfv()), std::string(name) + " transcription");
  }
  for (auto name : {"so3_rot.spec", "so2_angmom.spec", "cartan_oscillator.spec"}) {
    Model m = load(name);
    BvAction a = build_s_bv(m.bfv(), m.abs.A);
    const BvSpace& s = a.space;
    GradedPoly expect = s.zero();
    for (int i = 0; i < m.cd.n; ++i) {
      expect += s.p(i) * s.xdot(i) - s.constant(m.mech.beta(i)) * s.p(i);
      for (int j = 0; j < m.cd.n; ++j) expect -= s.constant(Q(1, 2) * m.mech.g(i, j)) * s.p(i) * s.p(j);
    }
    expect -= s.constant(m.mech.V);
    for (int b = 0; b < m.cd.r; ++b) {
      expect += s.lam(b) * s.constant(m.mech.alpha(b));
      for (int i = 0; i < m.cd.n; ++i) expect += s.lam(b) * s.constant(m.cd.rho(i, b)) * s.p(i);
    }
    c.expect(classical_limit(a) == expect, std::string(name) + " classical limit");
  }
  int negatives = 0;
  for (auto& name : bundled()) {
    Model m = load(name);
    bool bfv = check_bfv(m.bfv()).pass();
    bool master = master_equation_residual(build_s_bv(m.bfv(), m.abs.A)).is_zero();
    c.expect(bfv == master, name + " master iff BFV");
    c.expect(check_bv_master(m.bfv(), m.abs.A).pass() == master, name + " master record");
    if (!bfv) ++negatives;
  }
  c.expect(negatives >= 4, "negatives present");
  return c;
}

Criterion c8() {
  Criterion c{8, "Weil algebra identities and the deformed differential"};
  for (auto name : {"standard_hconst.spec", "so3.spec", "cartan_oscillator.spec"}) {
    Model m = load(name);
    Weil w = weil_for(m.cd);
    auto secs = test_sections(w), elems = test_elements(w);
    std::string n = name;
    c.expect(check_weil_d(w).pass(), n + " d^2");
    c.expect(check_cartan_magic(w, secs, elems).pass(), n + " magic formula");
    c.expect(check_bracket_relations(w, secs, elems).pass(), n + " brackets");
    c.expect(check_horizontal(w).pass(), n + " horizontal");
    c.expect(check_dorfman_match(w, m.cd).pass(), n + " Dorfman");
    std::vector<GradedPoly> reps = {w.constant(BaseCoeff(1)), w.charge()};
    if (m.cd.n > 0) reps.push_back(w.fp(0) * w.charge());
    reps.push_back(w.feta(0) * w.charge());
    c.expect(check_cartan_model(w, reps).pass(), n + " d_C^2");
  }
  int agree = 0, both = 0, neither = 0;
  std::string mismatch;
  for (auto name : {"cartan_oscillator.spec", "oscillator_mu_central.spec", "oscillator_mu_shift.spec"}) {
    Model m = load(name);
    DeformedWeilResult r = check_deformed_weil(m.cd, m.G, m.abs.B, m.abs.mu);
    if (r.d_squared_zero == r.momentum) {
      ++agree;
      (r.momentum ? both : neither)++;
    } else {
      mismatch += std::string(mismatch.empty() ? "" : ", ") + name;
    }
  }
  c.expect(both > 0 && neither > 0, "both directions witnessed");
  c.expect(mismatch.empty(), "d'^2 = 0 iff momentum (d'^2 = 0 while H2 fails: " + mismatch + ")");
  return c;
}

Criterion c9() {
  Criterion c{9, "property suites and the naive multiplication oracle"};
  auto reg = phase_registry(3);
  Tensor k({3, 3});
  k(0, 0) = BaseCoeff(2);
  k(1, 1) = BaseCoeff(-1);
  k(2, 2) = BaseCoeff(2);
  k(0, 1) = k(1, 0) = BaseCoeff(1);
  std::mt19937 rng(909);
  Tensor B = exterior_d(random_form(rng, 3, 1), 3);
  PhaseSpace ps(reg, {}, 3, 3, k, B);
  auto gens = phase_gens(ps);
  std::uniform_int_distribution<int> dd(0, 4);
  int cases = 0, bad = 0;
  for (int t = 0; t < 120; ++t) {
    auto f = testing::random_homogeneous(rng, reg, gens, dd(rng), 3, 2);
    auto g = testing::random_homogeneous(rng, reg, gens, dd(rng), 3, 2);
    auto h = testing::random_homogeneous(rng, reg, gens, dd(rng), 2, 1);
    int s = (f.parity() & g.parity()) ? -1 : 1;
    GradedPoly fg = ps.bracket(f, g), gf = ps.bracket(g, f);
    bad += !(fg == (s > 0 ? -gf : gf));
    GradedPoly lhs = ps.bracket(f, g * h);
    GradedPoly rhs = fg * h + (s > 0 ? g * ps.bracket(f, h) : -(g * ps.bracket(f, h)));
    bad += !(lhs == rhs);
    bad += !ps.jacobiator(f, g, h).is_zero();
    bad += !(f * g == (s > 0 ? g * f : -(g * f)));
    bad += !((f * g) * h == f * (g * h));
    cases += 5;
  }
  c.expect(bad == 0, std::to_string(bad) + " property failures");
  c.expect(cases >= 500, "at least 500 property cases");
  int pairs = 0, wrong = 0;
  for (int t = 0; t < 250; ++t) {
    auto a = testing::random_poly(rng, reg, gens, 4, 4, 2);
    auto b = testing::random_poly(rng, reg, gens, 4, 4, 2);
    wrong += !(a * b == oracle::naive_mul(a, b));
    ++pairs;
  }
  c.expect(wrong == 0, std::to_string(wrong) + " oracle mismatches");
  c.expect(pairs >= 200, "at least 200 oracle pairs");
  return c;
}

Criterion c10() {
  Criterion c{10, "parser round trip, stable reports, bundled verdicts"};
  std::vector<std::string> paths;
  for (auto& name : bundled()) {
    paths.push_back(model_path(name));
    ModelSpec s = load_spec(model_path(name));
    std::string text = print_spec(s);
    c.expect(parse_spec(text) == s, name + " round trip");
    c.expect(print_spec(parse_spec(text)) == text, name + " print fixed point");
    for (auto& e : s.expect) {
      Run run = run_file(parse_command(e.command), model_path(name));
      c.expect(run.error.empty() && run.pass() == e.pass, name + ": expect " + e.command);
    }
  }
  for (auto& name : command_names()) {
    Command cmd = parse_command(name);
    std::string a = emit_report(run_files(cmd, paths, 1), ReportFormat::Machine);
    std::string b = emit_report(run_files(cmd, paths, 4), ReportFormat::Machine);
    c.expect(a == b, name + " machine report stable");
  }
  try {
    parse_spec("n = 1\nr = 1\nV = 0.5*x1\n");
    c.expect(false, "float literal rejected");
  } catch (const ParseError& e) {
    c.expect(e.line() == 3 && e.col() == 5, "float literal position");
  }
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> all = {c1(), c2(), c3(), c4(), c5(), c6(), c7(), c8(), c9(), c10()};
  bool as_recorded = true;
  for (auto& c : all) {
    std::cout << "criterion " << (c.id < 10 ? " " : "") << c.id << ": " << (c.pass() ? "PASS" : "FAIL") << "  "
              << c.title << "  [" << c.checks - c.failed.size() << "/" << c.checks << "]";
    if (!c.pass()) {
      std::cout << "  failed:";
      for (auto& f : c.failed) std::cout << " {" << f << "}";
    }
    std::cout << "\n";
    if (c.pass() == static_cast<bool>(kExpectedFailures.count(c.id))) as_recorded = false;
  }
  int passed = static_cast<int>(std::count_if(all.begin(), all.end(), [](const Criterion& c) { return c.pass(); }));
  std::cout << passed << "/" << all.size() << " criteria pass; recorded failures:";
  for (int id : kExpectedFailures) std::cout << " " << id;
  std::cout << (as_recorded ? "; outcome as recorded\n" : "; outcome differs from the record\n");
  return as_recorded ? 0 : 1;
}

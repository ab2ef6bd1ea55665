#include "gq/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <sstream>
#include <thread>

#include "gq/bv_fhgd.hpp"
#include "gq/momentum.hpp"
#include "gq/weil.hpp"

namespace gq {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"verify-courant", "check-momentum", "check-mechanics", "bfv-check",
                                                 "bv-expand",      "bv-master",      "weil-check"};
  return names;
}

std::string Command::str() const {
  std::string s = name;
  if (solve_u) s += " --solve-u";
  if (max_degree >= 0) s += " --max-degree " + std::to_string(max_degree);
  if (classical) s += " --classical";
  if (with_momentum) s += " --with-momentum";
  return s;
}

Command parse_command(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> w;
  for (std::string s; in >> s;) w.push_back(s);
  if (w.empty()) throw std::invalid_argument("empty command");
  Command c;
  c.name = w[0];
  if (std::find(command_names().begin(), command_names().end(), c.name) == command_names().end())
    throw std::invalid_argument("unknown command " + c.name);
  for (std::size_t k = 1; k < w.size(); ++k) {
    const std::string& f = w[k];
    if (f == "--solve-u" && c.name == "bfv-check") c.solve_u = true;
    else if (f == "--classical" && c.name == "bv-expand") c.classical = true;
    else if (f == "--with-momentum" && c.name == "weil-check") c.with_momentum = true;
    else if (f == "--max-degree" && k + 1 < w.size()) {
      try {
        c.max_degree = std::stoi(w[++k]);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad --max-degree value " + w[k]);
      }
    } else
      throw std::invalid_argument("unknown flag " + f + " for " + c.name);
  }
  return c;
}

namespace {

using Clock = std::chrono::steady_clock;

void timed(Report& rep, const std::function<CheckRecord()>& fn) {
  auto t0 = Clock::now();
  CheckRecord rec = fn();
  rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  rep.records.push_back(std::move(rec));
}

CheckRecord master_charge(const CourantData& cd) {
  CheckRecord rec;
  rec.check = "master_charge";
  rec.anchor = "{Theta,Theta} = 0";
  PhaseSpace ps = make_phase_space(cd);
  GradedPoly th = build_theta(ps, cd);
  rec.add("theta_theta", ps.bracket(th, th));
  return rec;
}

CheckRecord classify_record(const Model& m) {
  CheckRecord rec;
  rec.check = "classify";
  rec.anchor = "momentum section class";
  Classification c = classify(m.cd, m.G, m.abs.B, m.abs.mu);
  rec.note("class", to_string(c.cls));
  rec.note("presymplectically_anchored", c.presymplectically_anchored ? "yes" : "no");
  rec.verdict = to_string(c.cls);
  return rec;
}

void verify_courant(const Model& m, Report& rep) {
  timed(rep, [&] { return verify_courant_axioms(m.cd); });
  timed(rep, [&] { return master_charge(m.cd); });
}

void check_momentum(const Model& m, Report& rep) {
  timed(rep, [&] { return check_h1(m.cd, m.G, m.abs.B); });
  timed(rep, [&] { return check_h2(m.cd, m.G, m.abs.B, m.abs.mu); });
  timed(rep, [&] { return check_h3(m.cd, m.abs.B, m.abs.mu); });
  timed(rep, [&] { return classify_record(m); });
}

void check_mechanics(const Model& m, Report& rep) {
  auto t0 = Clock::now();
  Report r = full_consistency(m.cd, m.G, m.mech);
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  for (auto& rec : r.records) {
    rec.wall_ms = ms / static_cast<double>(r.records.size());
    rep.records.push_back(rec);
  }
}

void bfv_check(const Command& cmd, const Model& m, Report& rep) {
  BfvModel b = m.bfv();
  if (cmd.solve_u) {
    bool feasible = false;
    timed(rep, [&] {
      int deg = cmd.max_degree >= 0 ? cmd.max_degree : default_u_degree(m.cd, m.G, m.mech.g);
      USolution sol = solve_u_linear(m.cd, m.G, m.mech.g, deg);
      CheckRecord rec;
      rec.check = "solve_u";
      rec.anchor = "U solving the linear U-equation";
      rec.note("max_degree", std::to_string(deg));
      feasible = sol.feasible;
      if (sol.feasible) {
        rec.add("U", sol.U, true);
        b.U = sol.U;
      } else {
        rec.residuals.push_back(Residual{"feasible", sol.certificate.empty() ? "no" : sol.certificate, false, false});
      }
      return rec;
    });
    if (!feasible) return;
  }
  timed(rep, [&] { return check_bfv(b); });
}

void bv_expand(const Command& cmd, const Model& m, Report& rep) {
  timed(rep, [&] {
    BvAction a = build_s_bv(m.bfv(), m.abs.A);
    CheckRecord rec;
    rec.check = cmd.classical ? "bv_classical" : "bv_action";
    rec.anchor = cmd.classical ? "density at zero antifields and ghosts" : "BV density";
    rec.add("density", cmd.classical ? classical_limit(a) : a.density, true);
    return rec;
  });
}

void bv_master(const Model& m, Report& rep) {
  timed(rep, [&] { return check_bv_master(m.bfv(), m.abs.A); });
}

void weil_check(const Command& cmd, const Model& m, Report& rep) {
  timed(rep, [&] { return master_charge(m.cd); });
  if (rep.records.back().pass()) {
    Weil w = weil_for(m.cd);
    std::vector<GradedPoly> secs = test_sections(w), elems = test_elements(w);
    timed(rep, [&] { return check_weil_d(w); });
    timed(rep, [&] { return check_cartan_magic(w, secs, elems); });
    timed(rep, [&] { return check_bracket_relations(w, secs, elems); });
    timed(rep, [&] { return check_horizontal(w); });
    timed(rep, [&] { return check_dorfman_match(w, m.cd); });
  }
  if (cmd.with_momentum) {
    timed(rep, [&] { return check_deformed_weil(m.cd, m.G, m.abs.B, m.abs.mu).record; });
    timed(rep, [&] { return check_h2(m.cd, m.G, m.abs.B, m.abs.mu); });
    timed(rep, [&] { return check_h3(m.cd, m.abs.B, m.abs.mu); });
  }
}

}  // namespace

Run run_command(const Command& cmd, const ModelSpec& spec, const std::string& label) {
  Run run;
  run.command = cmd.str();
  run.model = label;
  Model m;
  try {
    m = build_model(spec);
  } catch (const std::invalid_argument& e) {
    run.error = label + ": " + e.what();
    return run;
  }
  try {
    if (cmd.name == "verify-courant") verify_courant(m, run.report);
    else if (cmd.name == "check-momentum") check_momentum(m, run.report);
    else if (cmd.name == "check-mechanics") check_mechanics(m, run.report);
    else if (cmd.name == "bfv-check") bfv_check(cmd, m, run.report);
    else if (cmd.name == "bv-expand") bv_expand(cmd, m, run.report);
    else if (cmd.name == "bv-master") bv_master(m, run.report);
    else if (cmd.name == "weil-check") weil_check(cmd, m, run.report);
    else run.error = "unknown command " + cmd.name;
  } catch (const std::invalid_argument& e) {
    CheckRecord rec;
    rec.check = cmd.name;
    rec.anchor = "applicability";
    rec.residuals.push_back(Residual{"applicable", e.what(), false, false});
    rec.verdict = "not applicable";
    run.report.records.push_back(rec);
  }
  return run;
}

Run run_file(const Command& cmd, const std::string& path) {
  std::string label = std::filesystem::path(path).filename().string();
  try {
    return run_command(cmd, load_spec(path), label);
  } catch (const ParseError& e) {
    Run run;
    run.command = cmd.str();
    run.model = label;
    run.error = e.line() > 0 ? label + ":" + e.what() : e.bare();
    return run;
  }
}

std::vector<Run> run_files(const Command& cmd, const std::vector<std::string>& paths, int jobs) {
  std::vector<Run> out(paths.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < paths.size();) out[i] = run_file(cmd, paths[i]);
  };
  int threads = std::max(1, std::min<int>(jobs, static_cast<int>(paths.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

int exit_code(const std::vector<Run>& runs) {
  for (auto& r : runs)
    if (!r.error.empty()) return 2;
  for (auto& r : runs)
    if (!r.pass()) return 1;
  return 0;
}

}  // namespace gq

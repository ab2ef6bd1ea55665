#pragma once

#include <random>

#include "gq/graded_poly.hpp"

namespace gq::testing {

inline BaseCoeff random_coeff(std::mt19937& rng, int n, int max_deg, int max_terms = 2) {
  std::uniform_int_distribution<int> val(-3, 3), nt(1, max_terms), dg(0, max_deg), var(0, n - 1);
  BaseCoeff c;
  int t = nt(rng);
  for (int k = 0; k < t; ++k) {
    Exps e(n, 0);
    int d = dg(rng);
    for (int s = 0; s < d; ++s) e[var(rng)] += 1;
    int v = val(rng);
    if (v == 0) v = 1;
    c += BaseCoeff::monomial(e, Q(v));
  }
  return c.is_zero() ? BaseCoeff(1) : c;
}

// Random monomial of a given total degree over the listed generators.
inline std::optional<Mono> random_mono(std::mt19937& rng, const Registry& reg, const std::vector<Gen>& gens,
                                       int degree, int tries = 40) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
  for (int t = 0; t < tries; ++t) {
    Mono m;
    int d = 0;
    for (int s = 0; s < 8 && d < degree; ++s) {
      Gen g = gens[pick(rng)];
      int gd = reg.kind(g.kind).degree;
      if (gd == 0 || d + gd > degree) continue;
      Mono one{Factor{g, 1}}, out;
      if (mono_mul(reg, m, one, out) == 0) continue;
      m = out;
      d += gd;
    }
    if (d == degree) return m;
  }
  return std::nullopt;
}

inline GradedPoly random_poly(std::mt19937& rng, const RegPtr& reg, const std::vector<Gen>& gens, int max_terms,
                              int max_gen_power, int cdeg) {
  std::uniform_int_distribution<int> nt(1, max_terms), np(0, max_gen_power), pick(0, static_cast<int>(gens.size()) - 1);
  GradedPoly f(reg);
  int t = nt(rng);
  for (int k = 0; k < t; ++k) {
    GradedPoly m(reg, random_coeff(rng, reg->n(), cdeg));
    int len = np(rng);
    for (int s = 0; s < len; ++s) m = m * GradedPoly::gen(reg, gens[pick(rng)]);
    f += m;
  }
  return f;
}

inline GradedPoly random_homogeneous(std::mt19937& rng, const RegPtr& reg, const std::vector<Gen>& gens, int degree,
                                     int max_terms, int cdeg) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  GradedPoly f(reg);
  int t = nt(rng);
  for (int k = 0; k < t; ++k) {
    auto m = random_mono(rng, *reg, gens, degree);
    if (!m) continue;
    f.add_term(*m, random_coeff(rng, reg->n(), cdeg));
  }
  return f;
}

}  // namespace gq::testing

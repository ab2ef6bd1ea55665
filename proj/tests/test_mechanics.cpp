#include "doctest.h"
#include "gq/mechanics.hpp"
#include "support.hpp"

using namespace gq;

namespace {

BaseCoeff x(int i) { return BaseCoeff::var(i); }
BaseCoeff sq(int i) { return x(i) * x(i); }

CourantData so2_plane() {
  CourantData cd = zero_courant(2, 1, identity(1));
  cd.rho(0, 0) = -x(1);
  cd.rho(1, 0) = x(0);
  return cd;
}

MechanicsData angmom() {
  MechanicsData m = zero_mechanics(2, 1);
  m.g = identity(2);
  m.g_lower = identity(2);
  m.beta(1) = x(0) * Q(-2);
  m.alpha(0) = sq(1) - sq(0);
  m.V = sq(0) * Q(3) + sq(1);
  return m;
}

CourantData so3_rot() {
  Tensor rho({3, 3});
  Tensor eps = levi_civita(3);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j) rho(i, a) += eps(i, a, j) * x(j);
  return action_algebroid(levi_civita(3), identity(3), rho);
}

Connection random_connection(std::mt19937& rng, int n, int r, int deg) {
  Connection G = zero_connection(n, r);
  for (std::size_t k = 0; k < G.size(); ++k)
    if (rng() % 3 == 0) G.flat(k) = testing::random_coeff(rng, n, deg);
  return G;
}

MechanicsData random_mechanics(std::mt19937& rng, int n, int r) {
  MechanicsData m = zero_mechanics(n, r);
  for (int a = 0; a < r; ++a) m.alpha(a) = testing::random_coeff(rng, n, 2);
  m.g = identity(n);
  m.g(0, 1) = m.g(1, 0) = x(0);
  m.g(0, 0) = BaseCoeff(1) + sq(0);
  Tensor gl = identity(n);
  gl(0, 1) = gl(1, 0) = -x(0);
  gl(1, 1) = BaseCoeff(1) + sq(0);
  m.g_lower = gl;
  for (int i = 0; i < n; ++i) m.beta(i) = testing::random_coeff(rng, n, 1);
  m.V = testing::random_coeff(rng, n, 2);
  return m;
}

}  // namespace

TEST_CASE("absorb_beta") {
  auto cd = so2_plane();
  MechanicsData m = zero_mechanics(2, 1);
  m.alpha(0) = x(0);
  m.V = sq(1);
  auto ab = absorb_beta(cd, m);
  CHECK(ab.A.is_zero());
  CHECK(ab.V == m.V);
  CHECK(ab.mu == m.alpha);

  m.g = identity(2);
  m.beta(0) = x(1);
  m.beta(1) = -x(0);
  CHECK_THROWS_AS(absorb_beta(cd, m), std::invalid_argument);
  m.g_lower = identity(2).scaled(Q(2));
  CHECK_THROWS_AS(absorb_beta(cd, m), std::invalid_argument);
  m.g_lower = identity(2);
  ab = absorb_beta(cd, m);
  CHECK(ab.A == m.beta);
  CHECK(ab.B(0, 1) == BaseCoeff(-2));
  CHECK(ab.V == m.V - Q(1, 2) * (sq(0) + sq(1)));
  CHECK(ab.mu(0) == x(0) - (-x(1) * x(1) + x(0) * -x(0)));
}

TEST_CASE("first-class constraints") {
  auto std2 = standard_courant(2, Tensor({2, 2, 2}));
  CHECK(first_class_residual(std2, zero_mechanics(2, 4)).is_zero());
  CHECK(first_class_residual(so3_rot(), zero_mechanics(3, 3)).is_zero());
  CHECK(realized_jacobi(so3_rot(), zero_mechanics(3, 3)) == std::vector<GradedPoly>(1, GradedPoly(
                                                                   make_phase_space(so3_rot()).reg())));

  auto cd = so2_plane();
  auto m = angmom();
  CHECK(first_class_residual(cd, m).is_zero());

  // corrupt one structure constant
  auto bad = so3_rot();
  bad.f(0, 1, 2) = bad.f(1, 2, 0) = bad.f(2, 0, 1) = BaseCoeff(2);
  bad.f(1, 0, 2) = bad.f(0, 2, 1) = bad.f(2, 1, 0) = BaseCoeff(-2);
  auto res = first_class_residual(bad, zero_mechanics(3, 3));
  CHECK_FALSE(res.is_zero());
  CHECK(res.by_p_order[0].is_zero());
  for (int i = 0; i < 3; ++i) CHECK(res.by_p_order[1](0, 1, i) == -bad.rho(i, 2));
}

TEST_CASE("first-class residual splits into Courant (ii) and H3") {
  std::mt19937 rng(21);
  std::vector<CourantData> models = {so3_rot(), standard_courant(2, Tensor({2, 2, 2})), so2_plane()};
  auto bent = so3_rot();
  bent.rho(0, 0) = x(0);
  models.push_back(bent);
  for (auto& cd : models)
    for (int t = 0; t < 3; ++t) {
      MechanicsData m = zero_mechanics(cd.n, cd.r);
      for (int a = 0; a < cd.r; ++a) m.alpha(a) = testing::random_coeff(rng, cd.n, 2);
      if (cd.n >= 2) {
        m = random_mechanics(rng, cd.n, cd.r);
      }
      auto ab = absorb_beta(cd, m);
      auto fc = first_class_residual(cd, m);
      CHECK(fc.by_p_order[0] == h3_residual(cd, ab.B, ab.mu));
      auto ii = courant_residuals(cd).ii;
      for (int a = 0; a < cd.r; ++a)
        for (int b = 0; b < cd.r; ++b)
          for (int i = 0; i < cd.n; ++i) CHECK(fc.by_p_order[1](a, b, i) == ii(i, a, b));

      // same residual computed in the canonical variables
      PhaseSpace ps = mechanics_phase_space(cd, ab);
      auto raw = first_class_residual_unprimed(cd, m);
      for (std::size_t k = 0; k < raw.size(); ++k) CHECK(to_primed(ps, raw[k], ab.A) == fc.residual[k]);
    }
}

TEST_CASE("realized Jacobi identity") {
  std::mt19937 rng(22);
  CHECK(realized_jacobi(so2_plane(), angmom()).empty());
  auto std2 = standard_courant(2, Tensor({2, 2, 2}));
  MechanicsData m = zero_mechanics(2, 4);
  for (auto& r : realized_jacobi(std2, m)) CHECK(r.is_zero());
  // standard algebroid with closed-form momentum section mu = (nu, 0), d nu = 0
  m.alpha(0) = x(0) * x(1);
  m.alpha(1) = Q(1, 2) * sq(0);
  CHECK(first_class_residual(std2, m).is_zero());
  for (auto& r : realized_jacobi(std2, m)) CHECK(r.is_zero());
  auto so3 = so3_rot();
  MechanicsData z = zero_mechanics(3, 3);
  for (auto& r : realized_jacobi(so3, z)) CHECK(r.is_zero());
}

TEST_CASE("symmetry residual orders") {
  auto cd = so2_plane();
  auto m = angmom();
  auto G0 = zero_connection(2, 1);
  CHECK(symmetry_residual(cd, G0, m).is_zero());

  // free particle, translations
  CourantData tr = zero_courant(2, 1, identity(1));
  tr.rho(0, 0) = BaseCoeff(1);
  MechanicsData free = zero_mechanics(2, 1);
  free.g = identity(2);
  CHECK(symmetry_residual(tr, G0, free).is_zero());

  // rotations with g = delta: the metric part vanishes
  auto so3 = so3_rot();
  MechanicsData rot = zero_mechanics(3, 3);
  rot.g = identity(3);
  rot.V = x(0);
  auto sr = symmetry_residual(so3, zero_connection(3, 3), rot);
  CHECK(sr.by_p_order[2].is_zero());
  CHECK_FALSE(sr.by_p_order[0].is_zero());
  CHECK(sr.by_p_order[0] == e_d_potential(so3, rot.V));

  auto noninv = angmom();
  noninv.V += x(0);
  auto s2 = symmetry_residual(cd, G0, noninv);
  CHECK(s2.by_p_order[2].is_zero());
  CHECK(s2.by_p_order[1].is_zero());
  CHECK(s2.by_p_order[0](0) == -x(1));
  CHECK(s2.by_p_order[0] == e_d_potential(cd, absorb_beta(cd, noninv).V));
}

TEST_CASE("symmetry residual reproduces E D g, H2 and E d V'") {
  std::mt19937 rng(23);
  std::vector<CourantData> models = {so2_plane(), standard_courant(2, Tensor({2, 2, 2})), so3_rot()};
  int fails = 0;
  for (auto& cd : models)
    for (int t = 0; t < 3; ++t) {
      auto m = random_mechanics(rng, cd.n, cd.r);
      auto G = random_connection(rng, cd.n, cd.r, 1);
      auto ab = absorb_beta(cd, m);
      auto sr = symmetry_residual(cd, G, m);
      CHECK(sr.by_p_order[2] == e_connection_on_metric(cd, G, m.g));
      CHECK(sr.by_p_order[1] == raise_h2(m.g, h2_residual(cd, G, ab.B, ab.mu)));
      CHECK(sr.by_p_order[0] == e_d_potential(cd, ab.V));
      if (!sr.by_p_order[2].is_zero()) ++fails;
    }
  CHECK(fails > 0);
}

TEST_CASE("tau from beta and from A") {
  std::mt19937 rng(24);
  for (int t = 0; t < 5; ++t) {
    auto m = random_mechanics(rng, 2, 3);
    auto G = random_connection(rng, 2, 3, 1);
    CourantData cd = zero_courant(2, 3, identity(3));
    auto ab = absorb_beta(cd, m);
    CHECK(tau_from_beta(G, m.beta) == tau_from_A(G, m.g, ab.A));
  }
}

TEST_CASE("full consistency") {
  auto cd = so2_plane();
  auto G0 = zero_connection(2, 1);
  auto rep = full_consistency(cd, G0, angmom());
  CHECK(rep.pass());
  CHECK(classify(cd, G0, absorb_beta(cd, angmom()).B, absorb_beta(cd, angmom()).mu).cls ==
        MomentumClass::Hamiltonian);

  auto noninv = angmom();
  noninv.V += x(0);
  rep = full_consistency(cd, G0, noninv);
  CHECK_FALSE(rep.pass());
  for (auto& rec : rep.records)
    for (auto& r : rec.residuals) CHECK_MESSAGE((r.zero || r.informational) == (r.name != "order0_EdV"), r.name);

  // trivial bundle, D = d: order 1 is the momentum-map condition
  auto so3 = so3_rot();
  MechanicsData m = zero_mechanics(3, 3);
  m.g = identity(3);
  m.alpha(0) = x(0);
  auto sr = symmetry_residual(so3, zero_connection(3, 3), m);
  CHECK(sr.by_p_order[1] == raise_h2(m.g, momentmap_h2(so3, Tensor({3, 3}), m.alpha)));
}

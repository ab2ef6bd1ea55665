#include "doctest.h"
#include "gq/momentum.hpp"
#include "support.hpp"

using namespace gq;

namespace {

BaseCoeff x(int i) { return BaseCoeff::var(i); }

CourantData so2_plane() {
  CourantData cd = zero_courant(2, 1, identity(1));
  cd.rho(0, 0) = -x(1);
  cd.rho(1, 0) = x(0);
  return cd;
}

Tensor two_form(int n, int i, int j, const BaseCoeff& v) {
  Tensor B({n, n});
  B(i, j) = v;
  B(j, i) = -v;
  return B;
}

CourantData so3_rot() {
  Tensor rho({3, 3});
  Tensor eps = levi_civita(3);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j) rho(i, a) += eps(i, a, j) * x(j);
  return action_algebroid(levi_civita(3), identity(3), rho);
}

}  // namespace

TEST_CASE("gamma") {
  auto cd = so2_plane();
  CHECK(gamma_from(cd, Tensor({2, 2})).is_zero());
  CHECK(gamma_from(zero_courant(2, 1, identity(1)), two_form(2, 0, 1, 1)).is_zero());
  CourantData c1 = zero_courant(2, 1, identity(1));
  c1.rho(0, 0) = BaseCoeff(1);
  Tensor g = gamma_from(c1, two_form(2, 0, 1, 1));
  CHECK(g(1, 0) == BaseCoeff(1));
  CHECK(g(0, 0).is_zero());
}

TEST_CASE("angular momentum on the plane is Hamiltonian") {
  auto cd = so2_plane();
  Tensor B = two_form(2, 0, 1, 1);
  Tensor mu({1});
  mu(0) = BaseCoeff::monomial({2}, Q(-1, 2)) + BaseCoeff::monomial({0, 2}, Q(-1, 2));
  auto G = zero_connection(2, 1);
  CHECK(h2_residual(cd, G, B, mu).is_zero());
  CHECK(h3_residual(cd, B, mu).is_zero());
  CHECK(h2_residual(cd, G, B, mu) == momentmap_h2(cd, B, mu));
  CHECK(classify(cd, G, B, mu).cls == MomentumClass::Hamiltonian);
  CHECK(classify(cd, G, B, mu).presymplectically_anchored);
  CHECK(check_h2(cd, G, B, mu).pass());
  Tensor zero({1});
  CHECK(classify(cd, G, B, zero).cls == MomentumClass::None);
}

TEST_CASE("trivial bundle reduces to the momentum-map conditions") {
  auto cd = so3_rot();
  auto G = zero_connection(3, 3);
  std::mt19937 rng(8);
  for (int t = 0; t < 10; ++t) {
    Tensor mu({3});
    for (int a = 0; a < 3; ++a) mu(a) = testing::random_coeff(rng, 3, 2);
    Tensor B({3, 3});
    Tensor h2 = h2_residual(cd, G, B, mu);
    CHECK(h2 == momentmap_h2(cd, B, mu));
    // H3 = equivariance + rho^i_b (H2)_ia, exactly
    Tensor h3 = h3_residual(cd, B, mu), eq = momentmap_equivariance(cd, mu);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        BaseCoeff v = eq(a, b);
        for (int i = 0; i < 3; ++i) v += cd.rho(i, b) * h2(i, a);
        CHECK(h3(a, b) == v);
      }
  }
  // zero anchor, constant mu: weakly Hamiltonian only
  CourantData lie = action_algebroid(levi_civita(3), identity(3), Tensor({3, 3}));
  Tensor mu({3});
  mu(2) = BaseCoeff(1);
  CHECK(classify(lie, G, Tensor({3, 3}), mu).cls == MomentumClass::WeaklyHamiltonian);
  CHECK(h3_residual(lie, Tensor({3, 3}), mu) == momentmap_equivariance(lie, mu));
  CHECK(classify(lie, G, Tensor({3, 3}), Tensor({3})).cls == MomentumClass::Hamiltonian);
}

TEST_CASE("p component of E d mu is rho(mu*)") {
  std::mt19937 rng(9);
  auto cd = standard_courant(2, Tensor({2, 2, 2}));
  cd.rho(1, 2) = x(0);
  Tensor mu({4});
  for (int a = 0; a < 4; ++a) mu(a) = testing::random_coeff(rng, 2, 2);
  Tensor kinv = constant_inverse(cd.k);
  auto ed = e_d_mu(cd, mu);
  for (int i = 0; i < 2; ++i) {
    BaseCoeff v;
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 4; ++d) v += cd.rho(i, c) * kinv(c, d) * mu(d);
    CHECK(ed.p_part(i) == v);
  }
}

TEST_CASE("standard Courant algebroid: H3 is (d nu + i_Z h + B) on vector fields") {
  std::mt19937 rng(10);
  int n = 3;
  Tensor h = levi_civita(3).scaled(Q(2));
  auto cd = standard_courant(n, h);
  for (int t = 0; t < 5; ++t) {
    Tensor mu({6});
    for (int a = 0; a < 6; ++a) mu(a) = testing::random_coeff(rng, 3, 2);
    Tensor A({3});
    for (int i = 0; i < 3; ++i) A(i) = testing::random_coeff(rng, 3, 2);
    Tensor B = exterior_d(A, 3);
    Tensor res = h3_residual(cd, B, mu);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        BaseCoeff dnu = mu(b).partial(a) - mu(a).partial(b);
        BaseCoeff iz;
        for (int c = 0; c < n; ++c) iz += mu(n + c) * h(c, a, b);
        CHECK(res(a, b) == -(dnu + iz + B(a, b)));
      }
  }
}

TEST_CASE("H1") {
  auto cd = so2_plane();
  Tensor B = two_form(2, 0, 1, 1);
  CHECK(h1_residual(cd, zero_connection(2, 1), B).is_zero());

  CourantData c = zero_courant(2, 2, identity(2));
  c.rho(0, 0) = BaseCoeff(1);
  c.rho(1, 1) = BaseCoeff(2);
  CHECK(h1_residual(c, zero_connection(2, 2), B).is_zero());

  Connection G = zero_connection(2, 2);
  G(0, 1, 0) = x(1);
  G(1, 0, 1) = BaseCoeff(1);
  CHECK_FALSE(curvature(G).is_zero());
  CHECK_FALSE(h1_residual(c, G, B).is_zero());
  CHECK(check_h1(c, G, B).pass());  // informational only
  CHECK(check_h1(c, G, B).verdict == "not presymplectically anchored");
}

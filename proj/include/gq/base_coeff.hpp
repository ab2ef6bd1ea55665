#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gq {

using Q = mpq_class;

// Exponent vector over x1..xn with trailing zeros trimmed, so constants carry
// no dimension and coefficients of different base dimensions compose.
using Exps = std::vector<std::uint16_t>;

struct GrLex {
  bool operator()(const Exps& a, const Exps& b) const;
};

class BaseCoeff {
 public:
  using Terms = std::map<Exps, Q, GrLex>;

  BaseCoeff() = default;
  BaseCoeff(const Q& c);  // NOLINT implicit
  BaseCoeff(long c);      // NOLINT implicit
  BaseCoeff(int c) : BaseCoeff(static_cast<long>(c)) {}

  static BaseCoeff var(int i);
  static BaseCoeff monomial(Exps e, const Q& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Q constant_term() const;
  int total_degree() const;  // -1 for zero
  int max_var() const;       // one past the highest variable index used

  BaseCoeff operator-() const;
  BaseCoeff& operator+=(const BaseCoeff& o);
  BaseCoeff& operator-=(const BaseCoeff& o);
  BaseCoeff& operator*=(const BaseCoeff& o);
  BaseCoeff& operator*=(const Q& c);
  friend BaseCoeff operator+(BaseCoeff a, const BaseCoeff& b) { return a += b; }
  friend BaseCoeff operator-(BaseCoeff a, const BaseCoeff& b) { return a -= b; }
  friend BaseCoeff operator*(const BaseCoeff& a, const BaseCoeff& b);
  friend bool operator==(const BaseCoeff& a, const BaseCoeff& b) { return a.terms_ == b.terms_; }

  BaseCoeff partial(int i) const;
  // Evaluate with x_i -> vals[i]; missing entries count as zero.
  Q eval(const std::vector<Q>& vals) const;

  std::string str() const;

  void add_term(const Exps& e, const Q& c);

 private:
  Terms terms_;
};

std::string q_str(const Q& q);
void trim(Exps& e);

}  // namespace gq

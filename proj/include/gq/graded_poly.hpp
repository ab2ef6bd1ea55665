#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gq/base_coeff.hpp"

namespace gq {

struct Kind {
  std::string name;
  int degree = 0;
  int arity = 1;  // number of printed indices; a second index prints as primes
};

// Generator alphabet. Kind rank is the registration order.
class Registry {
 public:
  explicit Registry(int n) : n_(n) {}
  int add(std::string name, int degree, int arity = 1);
  int find(const std::string& name) const;  // -1 if absent
  const Kind& kind(int k) const { return kinds_.at(k); }
  int size() const { return static_cast<int>(kinds_.size()); }
  int n() const { return n_; }

 private:
  int n_;
  std::vector<Kind> kinds_;
};

using RegPtr = std::shared_ptr<const Registry>;

struct Gen {
  std::int16_t kind = 0;
  std::int16_t i = 0;
  std::int16_t j = 0;
  auto operator<=>(const Gen&) const = default;
};

struct Factor {
  Gen g;
  int pow = 1;
  auto operator<=>(const Factor&) const = default;
};

using Mono = std::vector<Factor>;

class RegistryMismatch : public std::logic_error {
 public:
  RegistryMismatch() : std::logic_error("graded polynomials over different registries") {}
};

struct Degree {
  enum Kind { Zero, Homogeneous, Mixed } kind = Zero;
  int value = 0;
  bool homogeneous() const { return kind == Homogeneous; }
};

class GradedPoly {
 public:
  using Terms = std::map<Mono, BaseCoeff>;

  GradedPoly() = default;
  explicit GradedPoly(RegPtr reg) : reg_(std::move(reg)) {}
  GradedPoly(RegPtr reg, const BaseCoeff& c);
  static GradedPoly gen(RegPtr reg, Gen g);
  static GradedPoly gen(RegPtr reg, int kind, int i = 0, int j = 0) {
    return gen(std::move(reg), Gen{static_cast<std::int16_t>(kind), static_cast<std::int16_t>(i),
                                   static_cast<std::int16_t>(j)});
  }

  const RegPtr& reg() const { return reg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BaseCoeff coeff(const Mono& m) const;

  GradedPoly operator-() const;
  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const BaseCoeff& c);
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend GradedPoly operator*(GradedPoly a, const BaseCoeff& c) { return a *= c; }
  friend GradedPoly operator*(const BaseCoeff& c, GradedPoly a) { return a *= c; }
  friend bool operator==(const GradedPoly& a, const GradedPoly& b) { return a.terms_ == b.terms_; }

  GradedPoly derive_left(const Gen& g) const;
  GradedPoly derive_right(const Gen& g) const;
  GradedPoly partial_x(int i) const;

  Degree degree() const;
  int mono_degree(const Mono& m) const;
  int parity() const;  // parity of a homogeneous element; 0 for zero
  bool gen_odd(const Gen& g) const { return reg_->kind(g.kind).degree & 1; }

  // Keep the monomials satisfying pred.
  GradedPoly select(const std::function<bool(const Mono&)>& pred) const;
  // Total power of generators of the given kind in a monomial.
  static int count(const Mono& m, int kind);

  std::string str() const;
  std::string gen_str(const Gen& g) const;

  void add_term(const Mono& m, const BaseCoeff& c);

 private:
  RegPtr reg_;
  Terms terms_;
};

std::string gen_name(const Registry& reg, const Gen& g);

// Product of two canonical monomials: returns sign (+1, -1) or 0 if an odd
// generator repeats; the merged monomial is written to out.
int mono_mul(const Registry& reg, const Mono& a, const Mono& b, Mono& out);

// Algebra homomorphism z -> img(z) (identity where img returns nullopt) with
// base coordinates shifted x -> x + shift[i]. Shifts must be nilpotent and
// x-independent so the Taylor series terminates.
GradedPoly substitute(const GradedPoly& f, RegPtr target,
                      const std::function<std::optional<GradedPoly>(const Gen&)>& img,
                      const std::vector<GradedPoly>& shift = {});

// A derivation of fixed degree given by its values on generators and on the
// base coordinates. Acts from the left.
struct Derivation {
  int degree = 0;
  std::function<GradedPoly(const Gen&)> on_gen;
  std::vector<GradedPoly> on_x;  // may be empty
  GradedPoly apply(const GradedPoly& f) const;
};

}  // namespace gq

#include "gq/base_coeff.hpp"

#include <algorithm>
#include <numeric>

namespace gq {

namespace {

int deg(const Exps& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

void trim(Exps& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

bool GrLex::operator()(const Exps& a, const Exps& b) const {
  int da = deg(a), db = deg(b);
  if (da != db) return da < db;
  std::size_t m = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i) {
    int ai = i < a.size() ? a[i] : 0;
    int bi = i < b.size() ? b[i] : 0;
    if (ai != bi) return ai < bi;
  }
  return false;
}

BaseCoeff::BaseCoeff(const Q& c) {
  if (c != 0) terms_.emplace(Exps{}, c);
}

BaseCoeff::BaseCoeff(long c) : BaseCoeff(Q(c)) {}

BaseCoeff BaseCoeff::var(int i) {
  Exps e(i + 1, 0);
  e[i] = 1;
  return monomial(std::move(e), 1);
}

BaseCoeff BaseCoeff::monomial(Exps e, const Q& c) {
  BaseCoeff r;
  trim(e);
  r.add_term(e, c);
  return r;
}

void BaseCoeff::add_term(const Exps& e, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool BaseCoeff::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Q BaseCoeff::constant_term() const {
  auto it = terms_.find(Exps{});
  return it == terms_.end() ? Q(0) : it->second;
}

int BaseCoeff::total_degree() const {
  return terms_.empty() ? -1 : deg(terms_.rbegin()->first);
}

int BaseCoeff::max_var() const {
  int m = 0;
  for (auto& [e, c] : terms_) m = std::max<int>(m, e.size());
  return m;
}

BaseCoeff BaseCoeff::operator-() const {
  BaseCoeff r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

BaseCoeff& BaseCoeff::operator+=(const BaseCoeff& o) {
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

BaseCoeff& BaseCoeff::operator-=(const BaseCoeff& o) {
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

BaseCoeff operator*(const BaseCoeff& a, const BaseCoeff& b) {
  BaseCoeff r;
  for (auto& [ea, ca] : a.terms_) {
    for (auto& [eb, cb] : b.terms_) {
      Exps e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

BaseCoeff& BaseCoeff::operator*=(const BaseCoeff& o) { return *this = *this * o; }

BaseCoeff& BaseCoeff::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

BaseCoeff BaseCoeff::partial(int i) const {
  BaseCoeff r;
  for (auto& [e, c] : terms_) {
    if (static_cast<std::size_t>(i) >= e.size() || e[i] == 0) continue;
    Exps d = e;
    Q f = c * static_cast<long>(d[i]);
    d[i] -= 1;
    trim(d);
    r.add_term(d, f);
  }
  return r;
}

Q BaseCoeff::eval(const std::vector<Q>& vals) const {
  Q s = 0;
  for (auto& [e, c] : terms_) {
    Q t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      Q v = i < vals.size() ? vals[i] : Q(0);
      for (int k = 0; k < e[i]; ++k) t *= v;
    }
    s += t;
  }
  return s;
}

std::string q_str(const Q& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string BaseCoeff::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exps& e = it->first;
    Q c = it->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += q_str(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += q_str(c) + "*" + mono;
    }
  }
  return out;
}

}  // namespace gq

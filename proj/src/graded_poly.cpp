#include "gq/graded_poly.hpp"

namespace gq {

int Registry::add(std::string name, int degree, int arity) {
  if (find(name) >= 0) throw std::invalid_argument("duplicate generator kind " + name);
  kinds_.push_back(Kind{std::move(name), degree, arity});
  return size() - 1;
}

int Registry::find(const std::string& name) const {
  for (int k = 0; k < size(); ++k)
    if (kinds_[k].name == name) return k;
  return -1;
}

std::string gen_name(const Registry& reg, const Gen& g) {
  const Kind& k = reg.kind(g.kind);
  std::string s = k.name;
  if (k.arity >= 1) s += std::to_string(g.i + 1);
  if (k.arity >= 2) s += std::string(g.j, '\'');
  return s;
}

namespace {

const RegPtr& pick(const RegPtr& a, const RegPtr& b) {
  if (!a) return b;
  if (b && a != b) throw RegistryMismatch();
  return a;
}

int weight(const Registry& reg, const Factor& f) { return (reg.kind(f.g.kind).degree & 1) & (f.pow & 1); }

}  // namespace

int mono_mul(const Registry& reg, const Mono& a, const Mono& b, Mono& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::vector<int> suffix(a.size() + 1, 0);
  for (std::size_t i = a.size(); i-- > 0;) suffix[i] = suffix[i + 1] ^ weight(reg, a[i]);
  int sign = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].g < b[j].g) {
      out.push_back(a[i++]);
    } else if (b[j].g < a[i].g) {
      sign ^= weight(reg, b[j]) & suffix[i];
      out.push_back(b[j++]);
    } else {
      if (reg.kind(a[i].g.kind).degree & 1) return 0;
      out.push_back(Factor{a[i].g, a[i].pow + b[j].pow});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return sign ? -1 : 1;
}

GradedPoly::GradedPoly(RegPtr reg, const BaseCoeff& c) : reg_(std::move(reg)) {
  if (!c.is_zero()) terms_.emplace(Mono{}, c);
}

GradedPoly GradedPoly::gen(RegPtr reg, Gen g) {
  GradedPoly r(std::move(reg));
  r.terms_.emplace(Mono{Factor{g, 1}}, BaseCoeff(1));
  return r;
}

BaseCoeff GradedPoly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BaseCoeff() : it->second;
}

void GradedPoly::add_term(const Mono& m, const BaseCoeff& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  reg_ = pick(reg_, o.reg_);
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  reg_ = pick(reg_, o.reg_);
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const BaseCoeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  Terms t;
  for (auto& [m, v] : terms_) {
    BaseCoeff p = v * c;
    if (!p.is_zero()) t.emplace(m, std::move(p));
  }
  terms_ = std::move(t);
  return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  GradedPoly r(pick(a.reg_, b.reg_));
  if (a.is_zero() || b.is_zero()) return r;
  const Registry& reg = *r.reg_;
  Mono out;
  for (auto& [ma, ca] : a.terms_) {
    for (auto& [mb, cb] : b.terms_) {
      int s = mono_mul(reg, ma, mb, out);
      if (s == 0) continue;
      BaseCoeff c = ca * cb;
      if (s < 0) c = -c;
      r.add_term(out, c);
    }
  }
  return r;
}

GradedPoly GradedPoly::derive_left(const Gen& g) const {
  GradedPoly r(reg_);
  for (auto& [m, c] : terms_) {
    int sign = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k].g == g) {
        Mono d = m;
        BaseCoeff v = c;
        if (gen_odd(g)) {
          if (sign) v = -v;
        } else {
          v *= Q(m[k].pow);
        }
        if (--d[k].pow == 0) d.erase(d.begin() + k);
        r.add_term(d, v);
        break;
      }
      sign ^= weight(*reg_, m[k]);
    }
  }
  return r;
}

GradedPoly GradedPoly::derive_right(const Gen& g) const {
  GradedPoly r(reg_);
  for (auto& [m, c] : terms_) {
    int sign = 0;
    for (std::size_t k = m.size(); k-- > 0;) {
      if (m[k].g == g) {
        Mono d = m;
        BaseCoeff v = c;
        if (gen_odd(g)) {
          if (sign) v = -v;
        } else {
          v *= Q(m[k].pow);
        }
        if (--d[k].pow == 0) d.erase(d.begin() + k);
        r.add_term(d, v);
        break;
      }
      sign ^= weight(*reg_, m[k]);
    }
  }
  return r;
}

GradedPoly GradedPoly::partial_x(int i) const {
  GradedPoly r(reg_);
  for (auto& [m, c] : terms_) r.add_term(m, c.partial(i));
  return r;
}

int GradedPoly::mono_degree(const Mono& m) const {
  int d = 0;
  for (auto& f : m) d += reg_->kind(f.g.kind).degree * f.pow;
  return d;
}

Degree GradedPoly::degree() const {
  Degree d;
  for (auto& [m, c] : terms_) {
    int v = mono_degree(m);
    if (d.kind == Degree::Zero) {
      d = Degree{Degree::Homogeneous, v};
    } else if (d.value != v) {
      return Degree{Degree::Mixed, 0};
    }
  }
  return d;
}

int GradedPoly::parity() const {
  if (terms_.empty()) return 0;
  return mono_degree(terms_.begin()->first) & 1;
}

GradedPoly GradedPoly::select(const std::function<bool(const Mono&)>& pred) const {
  GradedPoly r(reg_);
  for (auto& [m, c] : terms_)
    if (pred(m)) r.terms_.emplace(m, c);
  return r;
}

int GradedPoly::count(const Mono& m, int kind) {
  int s = 0;
  for (auto& f : m)
    if (f.g.kind == kind) s += f.pow;
  return s;
}

std::string GradedPoly::gen_str(const Gen& g) const { return gen_name(*reg_, g); }

std::string GradedPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    std::string gens;
    for (auto& f : m) {
      if (!gens.empty()) gens += "*";
      gens += gen_str(f.g);
      if (f.pow > 1) gens += "^" + std::to_string(f.pow);
    }
    std::string cs;
    bool neg = false;
    if (c.terms().size() == 1) {
      BaseCoeff a = c;
      if (c.terms().begin()->second < 0) {
        neg = true;
        a = -c;
      }
      cs = a.str();
      if (!gens.empty()) cs = cs == "1" ? gens : cs + "*" + gens;
    } else {
      cs = gens.empty() ? "(" + c.str() + ")" : "(" + c.str() + ")*" + gens;
    }
    if (first) {
      out += neg ? "-" + cs : cs;
    } else {
      out += (neg ? " - " : " + ") + cs;
    }
    first = false;
  }
  return out;
}

GradedPoly substitute(const GradedPoly& f, RegPtr target,
                      const std::function<std::optional<GradedPoly>(const Gen&)>& img,
                      const std::vector<GradedPoly>& shift) {
  GradedPoly r(target);
  bool shifting = false;
  for (auto& s : shift) shifting = shifting || !s.is_zero();
  for (auto& [m, c] : f.terms()) {
    GradedPoly t(target, BaseCoeff(1));
    for (auto& fac : m) {
      auto im = img(fac.g);
      GradedPoly g = im ? *im : GradedPoly::gen(target, fac.g);
      for (int k = 0; k < fac.pow; ++k) t = t * g;
      if (t.is_zero()) break;
    }
    if (t.is_zero()) continue;
    GradedPoly cimg(target, c);
    if (shifting) {
      GradedPoly term = cimg;
      for (int k = 1; !term.is_zero(); ++k) {
        GradedPoly next(target);
        for (std::size_t i = 0; i < shift.size(); ++i)
          if (!shift[i].is_zero()) next += shift[i] * term.partial_x(static_cast<int>(i));
        term = next * BaseCoeff(Q(1, k));
        cimg += term;
      }
    }
    r += cimg * t;
  }
  return r;
}

GradedPoly Derivation::apply(const GradedPoly& f) const {
  GradedPoly r(f.reg());
  for (auto& [m, c] : f.terms()) {
    GradedPoly term(f.reg());
    term.add_term(m, c);
    for (std::size_t i = 0; i < on_x.size(); ++i) {
      if (on_x[i].is_zero()) continue;
      GradedPoly d = term.partial_x(static_cast<int>(i));
      if (!d.is_zero()) r += on_x[i] * d;
    }
    for (auto& fac : m) {
      GradedPoly img = on_gen(fac.g);
      if (img.is_zero()) continue;
      r += img * term.derive_left(fac.g);
    }
  }
  return r;
}

}  // namespace gq

#include "gq/spec_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gq {

ParseError::ParseError(int line, int col, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      line_(line),
      col_(col),
      bare_(msg) {}

const std::vector<BlockInfo>& block_table() {
  static const std::vector<BlockInfo> t = {
      {"k", "rr", Symmetry::Symmetric},         {"rho", "nr", Symmetry::None},
      {"f", "rrr", Symmetry::Antisymmetric},    {"Gamma", "rrn", Symmetry::None},
      {"g", "nn", Symmetry::Symmetric},         {"g_inv", "nn", Symmetry::Symmetric},
      {"A", "n", Symmetry::None},               {"beta", "n", Symmetry::None},
      {"alpha", "r", Symmetry::None},           {"mu", "r", Symmetry::None},
      {"U", "rrrr", Symmetry::Antisymmetric},   {"h", "nnn", Symmetry::Antisymmetric},
  };
  return t;
}

const BlockInfo* find_block(const std::string& name) {
  for (auto& b : block_table())
    if (b.name == name) return &b;
  return nullptr;
}

std::vector<int> ModelSpec::shape_of(const std::string& name) const {
  const BlockInfo* b = find_block(name);
  if (!b) throw std::invalid_argument("unknown block " + name);
  std::vector<int> s;
  for (char c : b->dims) s.push_back(c == 'n' ? n : r);
  return s;
}

Tensor ModelSpec::get(const std::string& name) const {
  auto it = blocks.find(name);
  if (it != blocks.end()) return it->second;
  return Tensor(shape_of(name));
}

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int col = 0;
};

std::vector<Token> lex(const std::string& s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isdigit(c) || c == '.') {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      bool fl = j < s.size() && (s[j] == '.' || ((s[j] == 'e' || s[j] == 'E') && j + 1 < s.size() &&
                                                  (std::isdigit(static_cast<unsigned char>(s[j + 1])) ||
                                                   s[j + 1] == '-' || s[j + 1] == '+')));
      if (c == '.' || fl) {
        std::size_t k = j;
        while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '.')) ++k;
        throw ParseError(line, col, "float literal '" + s.substr(i, k - i) + "' not allowed; write a fraction such as 1/2");
      }
      out.push_back({Tok::Int, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::string("[]=+-*/^(),").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, static_cast<char>(c)), col});
      ++i;
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
  }
  out.push_back({Tok::End, "", static_cast<int>(s.size()) + 1});
  return out;
}

constexpr int kMaxExponent = 32;
constexpr int kMaxDim = 16;

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t pos, int line, int n)
      : t_(toks), p_(pos), line_(line), n_(n) {}

  BaseCoeff parse_all() {
    BaseCoeff v = expr();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after expression");
    return v;
  }

 private:
  const std::vector<Token>& t_;
  std::size_t p_;
  int line_, n_;

  const Token& peek() const { return t_[p_]; }
  bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.col, msg); }

  BaseCoeff expr() {
    BaseCoeff v = term();
    while (is_sym("+") || is_sym("-")) {
      bool minus = peek().text == "-";
      ++p_;
      BaseCoeff w = term();
      if (minus) v -= w;
      else v += w;
    }
    return v;
  }

  BaseCoeff term() {
    BaseCoeff v = unary();
    while (is_sym("*") || is_sym("/")) {
      bool div = peek().text == "/";
      const Token& op = peek();
      ++p_;
      const Token& at = peek();
      BaseCoeff w = unary();
      if (!div) {
        v = v * w;
        continue;
      }
      if (!w.is_constant()) fail(at, "non-polynomial expression: division by a non-constant");
      Q c = w.constant_term();
      if (c == 0) fail(op, "division by zero");
      v *= Q(1) / c;
    }
    return v;
  }

  BaseCoeff unary() {
    if (is_sym("-")) {
      ++p_;
      return -unary();
    }
    if (is_sym("+")) {
      ++p_;
      return unary();
    }
    return power();
  }

  BaseCoeff power() {
    BaseCoeff b = atom();
    if (!is_sym("^")) return b;
    ++p_;
    const Token& e = peek();
    if (is_sym("-")) fail(e, "non-polynomial expression: negative exponent");
    if (e.kind != Tok::Int) fail(e, "exponent must be a nonnegative integer literal");
    if (e.text.size() > 3 || std::stoi(e.text) > kMaxExponent) fail(e, "exponent too large");
    int k = std::stoi(e.text);
    ++p_;
    BaseCoeff out(1);
    for (int s = 0; s < k; ++s) out = out * b;
    return out;
  }

  BaseCoeff atom() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      ++p_;
      return BaseCoeff(Q(mpz_class(t.text)));
    }
    if (t.kind == Tok::Ident) {
      ++p_;
      if (is_sym("(")) fail(t, "non-polynomial expression: function '" + t.text + "'");
      if (t.text.size() >= 2 && t.text[0] == 'x' &&
          std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        if (t.text.size() > 4) fail(t, "variable index out of range");
        int i = std::stoi(t.text.substr(1));
        if (i < 1 || i > n_) fail(t, "variable " + t.text + " out of range x1..x" + std::to_string(n_));
        return BaseCoeff::var(i - 1);
      }
      fail(t, "unknown symbol '" + t.text + "'");
    }
    if (is_sym("(")) {
      ++p_;
      BaseCoeff v = expr();
      if (!is_sym(")")) fail(peek(), "expected ')'");
      ++p_;
      return v;
    }
    if (t.kind == Tok::End) fail(t, "expected an expression");
    fail(t, "unexpected '" + t.text + "'");
  }
};

int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b + 1 < idx.size() - a; ++b)
      if (idx[b] > idx[b + 1]) {
        std::swap(idx[b], idx[b + 1]);
        sign = -sign;
      }
  return sign;
}

bool has_repeat(std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  return std::adjacent_find(idx.begin(), idx.end()) != idx.end();
}

std::string index_str(const std::string& name, const std::vector<int>& idx) {
  std::string s = name;
  for (int i : idx) s += "[" + std::to_string(i + 1) + "]";
  return s;
}

std::string shape_str(const std::vector<int>& s) {
  if (s.empty()) return "scalar";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "x" : "") + std::to_string(s[i]);
  return out;
}

Tensor builtin(const std::string& name, const std::vector<int>& args, const std::vector<int>& shape,
               const Token& at, int line) {
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ParseError(line, at.col, name + " takes " + std::to_string(k) + " argument(s)");
  };
  std::vector<int> out;
  int m = args.empty() ? 0 : args[0];
  if (name == "zero") out = shape;
  else if (name == "identity") out = {m, m};
  else if (name == "offdiag_identity") out = {2 * m, 2 * m};
  else if (name == "levi_civita") out = std::vector<int>(static_cast<std::size_t>(m), m);
  else throw ParseError(line, at.col, "unknown builtin '" + name + "'");
  if (out != shape)
    throw ParseError(line, at.col, "shape mismatch: block expects " + shape_str(shape) + ", " + name + " gives " +
                                      shape_str(out));
  Tensor t;
  if (name == "zero") {
    need(0);
    t = Tensor(shape);
  } else if (name == "identity") {
    need(1);
    t = identity(args[0]);
  } else if (name == "offdiag_identity") {
    need(1);
    t = Tensor({2 * m, 2 * m});
    for (int i = 0; i < m; ++i) t(i, m + i) = t(m + i, i) = BaseCoeff(1);
  } else {
    need(1);
    t = levi_civita(args[0]);
  }
  return t;
}

struct BlockState {
  std::set<std::vector<int>> assigned;
  bool whole = false;
  int line = 0;
};

}  // namespace

BaseCoeff parse_expression(const std::string& text, int n) {
  auto toks = lex(text, 1);
  return ExprParser(toks, 0, 1, n).parse_all();
}

ModelSpec parse_spec(const std::string& text) {
  ModelSpec s;
  std::map<std::string, BlockState> state;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool v_set = false;
  auto require_dims = [&](const Token& at) {
    if (s.n < 0 || s.r < 0) throw ParseError(line, at.col, "n and r must be declared before any block");
  };
  auto exclusive = [&](const std::string& name, const Token& at) {
    static const std::vector<std::pair<std::string, std::string>> pairs = {{"A", "beta"}, {"alpha", "mu"}};
    for (auto& [a, b] : pairs) {
      const std::string* other = name == a ? &b : name == b ? &a : nullptr;
      if (other && s.has(*other))
        throw ParseError(line, at.col, "blocks " + a + " and " + b + " are mutually exclusive");
    }
    if (name == "h")
      for (const char* o : {"k", "rho", "f"})
        if (s.has(o)) throw ParseError(line, at.col, "h defines the standard algebroid; k, rho, f must not be given");
    if ((name == "k" || name == "rho" || name == "f") && s.has("h"))
      throw ParseError(line, at.col, "h defines the standard algebroid; k, rho, f must not be given");
  };

  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string body = raw.substr(0, raw.find('#'));
    std::string trimmed = body;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty()) continue;

    if (trimmed.rfind("expect", 0) == 0 && (trimmed.size() == 6 || std::isspace(static_cast<unsigned char>(trimmed[6])))) {
      std::istringstream ws(trimmed.substr(6));
      std::vector<std::string> words;
      for (std::string w; ws >> w;) words.push_back(w);
      int col = static_cast<int>(body.find("expect")) + 1;
      if (words.size() < 2) throw ParseError(line, col, "expect needs a command and a verdict");
      const std::string& v = words.back();
      if (v != "pass" && v != "fail") throw ParseError(line, col, "verdict must be pass or fail");
      Expectation e;
      e.pass = v == "pass";
      for (std::size_t k = 0; k + 1 < words.size(); ++k) e.command += (k ? " " : "") + words[k];
      s.expect.push_back(e);
      continue;
    }

    auto toks = lex(body, line);
    const Token& head = toks[0];
    if (head.kind != Tok::Ident) throw ParseError(line, head.col, "expected a block name");
    std::size_t p = 1;

    if (head.text == "n" || head.text == "r") {
      if (!(toks[p].kind == Tok::Sym && toks[p].text == "=")) throw ParseError(line, toks[p].col, "expected '='");
      const Token& v = toks[p + 1];
      if (v.kind != Tok::Int) throw ParseError(line, v.col, head.text + " must be a nonnegative integer");
      if (toks[p + 2].kind != Tok::End) throw ParseError(line, toks[p + 2].col, "unexpected '" + toks[p + 2].text + "'");
      if (v.text.size() > 3 || std::stoi(v.text) > kMaxDim) throw ParseError(line, v.col, "dimension too large");
      int& dst = head.text == "n" ? s.n : s.r;
      if (dst >= 0) throw ParseError(line, head.col, head.text + " declared twice");
      if (!s.blocks.empty() || v_set) throw ParseError(line, head.col, head.text + " must precede all blocks");
      dst = std::stoi(v.text);
      continue;
    }

    if (head.text == "V") {
      require_dims(head);
      if (!(toks[p].kind == Tok::Sym && toks[p].text == "=")) throw ParseError(line, toks[p].col, "expected '='");
      if (v_set) throw ParseError(line, head.col, "V assigned twice");
      s.V = ExprParser(toks, p + 1, line, s.n).parse_all();
      s.has_V = v_set = true;
      continue;
    }

    const BlockInfo* info = find_block(head.text);
    if (!info) throw ParseError(line, head.col, "unknown block '" + head.text + "'");
    require_dims(head);
    std::vector<int> shape = s.shape_of(info->name);
    BlockState& st = state[info->name];
    if (!s.has(info->name)) exclusive(info->name, head);
    if (st.whole) throw ParseError(line, head.col, "block " + info->name + " already assigned as a whole");

    std::vector<int> idx;
    std::vector<int> idx_cols;
    while (toks[p].kind == Tok::Sym && toks[p].text == "[") {
      const Token& v = toks[p + 1];
      if (v.kind != Tok::Int) throw ParseError(line, v.col, "index must be a positive integer");
      if (!(toks[p + 2].kind == Tok::Sym && toks[p + 2].text == "]")) throw ParseError(line, toks[p + 2].col, "expected ']'");
      idx.push_back(v.text.size() > 4 ? 100000 : std::stoi(v.text) - 1);
      idx_cols.push_back(v.col);
      p += 3;
    }
    if (!(toks[p].kind == Tok::Sym && toks[p].text == "=")) throw ParseError(line, toks[p].col, "expected '='");
    ++p;

    if (idx.empty()) {
      if (!st.assigned.empty()) throw ParseError(line, head.col, "block " + info->name + " already has entries");
      const Token& fn = toks[p];
      if (fn.kind != Tok::Ident || !(toks[p + 1].kind == Tok::Sym && toks[p + 1].text == "("))
        throw ParseError(line, fn.col, "a whole block takes a builtin such as identity(n); use indexed entries otherwise");
      std::size_t q = p + 2;
      std::vector<int> args;
      while (!(toks[q].kind == Tok::Sym && toks[q].text == ")")) {
        if (toks[q].kind != Tok::Int) throw ParseError(line, toks[q].col, "builtin arguments are integers");
        if (toks[q].text.size() > 3 || std::stoi(toks[q].text) > kMaxDim) throw ParseError(line, toks[q].col, "argument too large");
        args.push_back(std::stoi(toks[q].text));
        ++q;
        if (toks[q].kind == Tok::Sym && toks[q].text == ",") ++q;
        else if (!(toks[q].kind == Tok::Sym && toks[q].text == ")")) throw ParseError(line, toks[q].col, "expected ',' or ')'");
      }
      if (toks[q + 1].kind != Tok::End) throw ParseError(line, toks[q + 1].col, "unexpected '" + toks[q + 1].text + "'");
      Tensor t = builtin(fn.text, args, shape, fn, line);
      if (info->sym == Symmetry::Symmetric && !t.symmetry_defect().is_zero())
        throw ParseError(line, fn.col, info->name + " is declared symmetric");
      if (info->sym == Symmetry::Antisymmetric && !t.antisymmetry_defect().is_zero())
        throw ParseError(line, fn.col, info->name + " is declared antisymmetric");
      s.blocks[info->name] = t;
      st.whole = true;
      continue;
    }

    if (idx.size() != shape.size())
      throw ParseError(line, head.col, info->name + " takes " + std::to_string(shape.size()) + " indices");
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (idx[k] < 0 || idx[k] >= shape[k])
        throw ParseError(line, idx_cols[k], "index out of range 1.." + std::to_string(shape[k]));
    BaseCoeff v = ExprParser(toks, p, line, s.n).parse_all();
    auto [it, fresh] = s.blocks.try_emplace(info->name, Tensor(shape));
    Tensor& t = it->second;
    (void)fresh;

    std::vector<int> key = idx;
    int sign = 1;
    if (info->sym != Symmetry::None) {
      sign = sort_sign(key);
      if (info->sym == Symmetry::Symmetric) sign = 1;
    }
    if (info->sym == Symmetry::Antisymmetric && has_repeat(idx)) {
      if (!v.is_zero())
        throw ParseError(line, head.col, "antisymmetric block " + info->name + " has zero diagonal entries");
      continue;
    }
    if (st.assigned.count(key)) {
      if (t.at(idx) == v) continue;
      throw ParseError(line, head.col,
                       index_str(info->name, idx) + (key == idx ? " assigned twice" : " conflicts with the declared symmetry"));
    }
    st.assigned.insert(key);
    if (info->sym == Symmetry::None) {
      t.at(idx) = v;
      continue;
    }
    std::vector<int> perm = key;
    BaseCoeff base = sign > 0 ? v : -v;  // value on the sorted tuple
    do {
      std::vector<int> tmp = perm;
      int sg = info->sym == Symmetry::Antisymmetric ? sort_sign(tmp) : 1;
      t.at(perm) = sg > 0 ? base : -base;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (s.n < 0 || s.r < 0) throw ParseError(line + 1, 1, "n and r must be declared");
  return s;
}

ModelSpec load_spec(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(0, 0, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_spec(ss.str());
}

std::string print_spec(const ModelSpec& s) {
  std::ostringstream out;
  out << "n = " << s.n << "\n";
  out << "r = " << s.r << "\n";
  for (auto& info : block_table()) {
    auto it = s.blocks.find(info.name);
    if (it == s.blocks.end()) continue;
    const Tensor& t = it->second;
    if (t.is_zero()) {
      out << info.name << " = zero()\n";
      continue;
    }
    for (auto& [idx, v] : t.nonzero()) {
      if (info.sym != Symmetry::None && !std::is_sorted(idx.begin(), idx.end())) continue;
      out << index_str(info.name, idx) << " = " << v.str() << "\n";
    }
  }
  if (s.has_V) out << "V = " << s.V.str() << "\n";
  for (auto& e : s.expect) out << "expect " << e.command << " " << (e.pass ? "pass" : "fail") << "\n";
  return out.str();
}

BfvModel Model::bfv() const { return BfvModel{cd, G, mech.g, abs.B, abs.mu, abs.V, U}; }

Model build_model(const ModelSpec& s) {
  Model m;
  int n = s.n, r = s.r;
  if (s.has("h")) {
    if (r != 2 * n) throw std::invalid_argument("the standard algebroid needs r = 2n");
    m.cd = standard_courant(n, s.get("h"));
  } else {
    if (!s.has("k")) throw std::invalid_argument("block k is required");
    m.cd = zero_courant(n, r, s.get("k"));
    m.cd.rho = s.get("rho");
    m.cd.f = s.get("f");
  }
  validate(m.cd);
  try {
    constant_inverse(m.cd.k);
  } catch (const std::exception&) {
    throw std::invalid_argument("k must be constant and invertible");
  }
  m.G = s.get("Gamma");
  m.U = s.get("U");
  m.mech = zero_mechanics(n, r);
  m.mech.g = s.get("g");
  m.mech.V = s.V;
  if (s.has("g_inv")) m.mech.g_lower = s.get("g_inv");
  Tensor A = s.get("A");
  if (s.has("A") && !A.is_zero()) {
    m.mech.beta = Tensor({n});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.mech.beta(i) += m.mech.g(i, j) * A(j);
    if (!m.mech.g_lower) {
      try {
        m.mech.g_lower = constant_inverse(m.mech.g);
      } catch (const std::exception&) {
      }
    }
  } else {
    m.mech.beta = s.get("beta");
    if (!m.mech.beta.is_zero()) {
      if (!m.mech.g_lower) throw std::invalid_argument("beta requires g_inv");
      A = Tensor({n});
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i) += (*m.mech.g_lower)(i, j) * m.mech.beta(j);
    }
  }
  m.mech.alpha = s.get("alpha");
  if (s.has("mu")) {
    Tensor mu = s.get("mu");
    for (int a = 0; a < r; ++a) {
      BaseCoeff v = mu(a);
      for (int i = 0; i < n; ++i) v += m.cd.rho(i, a) * A(i);
      m.mech.alpha(a) = v;
    }
  }
  if (m.mech.beta.is_zero() || m.mech.g_lower) {
    m.abs = absorb_beta(m.cd, m.mech);
  } else {
    m.abs.A = A;
    BaseCoeff half;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) half += m.mech.g(i, j) * A(i) * A(j);
    m.abs.V = m.mech.V - half * BaseCoeff(Q(1, 2));
    m.abs.mu = Tensor({r});
    for (int a = 0; a < r; ++a) {
      BaseCoeff v = m.mech.alpha(a);
      for (int i = 0; i < n; ++i) v -= m.cd.rho(i, a) * A(i);
      m.abs.mu(a) = v;
    }
    m.abs.B = exterior_d(A, n);
  }
  return m;
}

namespace {

std::string fmt_ms(double ms) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(1) << ms;
  return o.str();
}

}  // namespace

std::string emit_report(const std::vector<Run>& runs, ReportFormat fmt) {
  bool all = std::all_of(runs.begin(), runs.end(), [](const Run& r) { return r.pass(); });
  if (fmt == ReportFormat::Machine) {
    nlohmann::json root;
    root["pass"] = all;
    root["runs"] = nlohmann::json::array();
    for (auto& run : runs) {
      nlohmann::json jr;
      jr["command"] = run.command;
      jr["model"] = run.model;
      jr["pass"] = run.pass();
      if (!run.error.empty()) jr["error"] = run.error;
      jr["records"] = nlohmann::json::array();
      for (auto& rec : run.report.records) {
        nlohmann::json j;
        j["check"] = rec.check;
        j["anchor"] = rec.anchor;
        j["verdict"] = rec.verdict_text();
        j["pass"] = rec.pass();
        j["residuals"] = nlohmann::json::array();
        for (auto& res : rec.residuals)
          j["residuals"].push_back(
              {{"name", res.name}, {"value", res.value}, {"zero", res.zero}, {"informational", res.informational}});
        j["info"] = nlohmann::json::object();
        for (auto& [k, v] : rec.info) j["info"][k] = v;
        jr["records"].push_back(j);
      }
      root["runs"].push_back(jr);
    }
    return root.dump(2) + "\n";
  }
  std::ostringstream out;
  for (auto& run : runs) {
    out << "== " << run.command << " " << run.model << "\n";
    if (!run.error.empty()) out << "  error: " << run.error << "\n";
    for (auto& rec : run.report.records) {
      out << "  " << rec.check << ": " << rec.verdict_text() << " (" << fmt_ms(rec.wall_ms) << " ms)  [" << rec.anchor
          << "]\n";
      for (auto& res : rec.residuals)
        out << "    " << res.name << (res.informational ? " (info)" : "") << " = " << res.value << "\n";
      for (auto& [k, v] : rec.info) out << "    " << k << ": " << v << "\n";
    }
    out << "  result: " << (run.pass() ? "pass" : "fail") << "\n";
  }
  return out.str();
}

}  // namespace gq

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gq/bfv.hpp"
#include "gq/mechanics.hpp"

namespace gq {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg);
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& bare() const { return bare_; }

 private:
  int line_, col_;
  std::string bare_;
};

enum class Symmetry { None, Symmetric, Antisymmetric };

struct BlockInfo {
  std::string name;
  std::string dims;  // one letter per slot: 'n' or 'r'
  Symmetry sym = Symmetry::None;
};
// k, rho, f, Gamma, g, g_inv, A, beta, alpha, mu, U, h in print order.
const std::vector<BlockInfo>& block_table();
const BlockInfo* find_block(const std::string& name);

struct Expectation {
  std::string command;  // subcommand plus flags, single-spaced
  bool pass = true;
  friend bool operator==(const Expectation&, const Expectation&) = default;
};

struct ModelSpec {
  int n = -1, r = -1;
  std::map<std::string, Tensor> blocks;  // declared blocks only
  BaseCoeff V;
  bool has_V = false;
  std::vector<Expectation> expect;

  bool has(const std::string& name) const { return blocks.count(name) > 0; }
  // The declared block, or zeros of the right shape.
  Tensor get(const std::string& name) const;
  std::vector<int> shape_of(const std::string& name) const;
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Throws ParseError with 1-based line and column.
ModelSpec parse_spec(const std::string& text);
ModelSpec load_spec(const std::string& path);
// Canonical text; parse_spec(print_spec(s)) == s.
std::string print_spec(const ModelSpec& s);
// Polynomial in x1..xn; throws ParseError positioned at line 1.
BaseCoeff parse_expression(const std::string& text, int n);

// Typed data derived from a spec. With h the algebroid is the standard one
// on TM + T*M; A or beta enters through the absorbed form.
struct Model {
  CourantData cd;
  Connection G;
  MechanicsData mech;
  Absorbed abs;
  Tensor U;
  BfvModel bfv() const;
};
// Throws std::invalid_argument on inconsistent data.
Model build_model(const ModelSpec& s);

enum class ReportFormat { Human, Machine };
struct Run {
  std::string command;
  std::string model;
  Report report;
  std::string error;  // nonempty when the model could not be checked
  bool pass() const { return error.empty() && report.pass(); }
};
// Machine output is sorted-key JSON without timings.
std::string emit_report(const std::vector<Run>& runs, ReportFormat fmt);

}  // namespace gq

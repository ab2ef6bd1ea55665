#pragma once

#include <string>
#include <vector>

#include "gq/spec_io.hpp"

namespace gq {

struct Command {
  std::string name;  // verify-courant, check-momentum, ...
  bool solve_u = false;
  bool classical = false;
  bool with_momentum = false;
  int max_degree = -1;  // U-solve degree bound; -1 picks default_u_degree

  // Subcommand plus its flags, as written on an expect line.
  std::string str() const;
};

const std::vector<std::string>& command_names();
// Parses "bfv-check --solve-u" style text; throws std::invalid_argument.
Command parse_command(const std::string& text);

// Runs one command on a parsed model. Parse and model errors land in
// Run::error; check failures in the records.
Run run_command(const Command& cmd, const ModelSpec& spec, const std::string& label);
Run run_file(const Command& cmd, const std::string& path);
// Runs every file on up to jobs threads; results keep the input order.
std::vector<Run> run_files(const Command& cmd, const std::vector<std::string>& paths, int jobs);

// 0 all pass, 1 some check failed, 2 some input could not be read.
int exit_code(const std::vector<Run>& runs);

}  // namespace gq

// gqcheck: consistency checks for graded-geometry mechanics models.
#include <iostream>

#include "CLI11.hpp"
#include "gq/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Consistency checks for models given as .spec files"};
  app.require_subcommand(1);
  app.fallthrough();

  bool machine = false;
  int jobs = 1;
  int max_degree = -1;
  app.add_flag("--machine", machine, "Canonical JSON report");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--max-degree", max_degree, "Degree bound for the U solve")->check(CLI::Range(0, 6));

  gq::Command cmd;
  std::vector<std::string> files;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"verify-courant", "Courant axioms and {Theta,Theta} = 0"},
      {"check-momentum", "H1, H2, H3 and classification"},
      {"check-mechanics", "First-class constraints and the symmetry of H"},
      {"bfv-check", "BFV residuals of S and H"},
      {"bv-expand", "Print the BV density"},
      {"bv-master", "Classical master equation"},
      {"weil-check", "Weil algebra identities"},
  };
  for (const Sub& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("models", files, "Model files")->required();
    std::string name = s.name;
    if (name == "bfv-check") sc->add_flag("--solve-u", cmd.solve_u, "Solve for U before checking");
    if (name == "bv-expand") sc->add_flag("--classical", cmd.classical, "Drop antifields and ghosts");
    if (name == "weil-check")
      sc->add_flag("--with-momentum", cmd.with_momentum, "Deformed differential and momentum checks");
    sc->callback([&cmd, name] { cmd.name = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cmd.max_degree = max_degree;

  std::vector<gq::Run> runs = gq::run_files(cmd, files, jobs);
  std::cout << gq::emit_report(runs, machine ? gq::ReportFormat::Machine : gq::ReportFormat::Human);
  for (auto& r : runs)
    if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
  return gq::exit_code(runs);
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pbrack/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pbrack: Poisson brackets, commutators and Lie-algebra closure for canonical "
               "Hamiltonian systems"};

  std::string script_path;
  std::string out_path;
  std::string hbar_text = "1";
  pbrack::RunFlags flags;

  app.add_option("script", script_path, "session script to execute")->required();
  app.add_option("--out", out_path, "write the machine-readable JSON report to this file");
  app.add_option("--seed", flags.seed, "seed for the numeric oracle (default 42)");
  app.add_flag("--fail-fast", flags.fail_fast, "stop at the first command error");
  app.add_flag("--quiet", flags.quiet, "suppress human-readable output");
  app.add_option("--hbar-value", hbar_text, "numeric value of hbar for the oracle (default 1)");
  app.set_version_flag("--version", std::string("pbrack ") + pbrack::kVersion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    std::cout << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    flags.hbar_value = pbrack::parse_rational_flag(hbar_text);
  } catch (const pbrack::Error& e) {
    std::cerr << "bad --hbar-value: " << e.what() << "\n";
    return 2;
  }

  std::ifstream in(script_path);
  if (!in) {
    std::cerr << "cannot read script '" << script_path << "'\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  pbrack::RunOutcome outcome = pbrack::run_session(buffer.str(), flags, std::cout);
  if (outcome.exit_code == 2) {
    std::cerr << "script error: " << outcome.parse_error << "\n";
    return 2;
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write report to '" << out_path << "'\n";
      return 2;
    }
    out << outcome.report.dump(2) << "\n";
  }
  return outcome.exit_code;
}

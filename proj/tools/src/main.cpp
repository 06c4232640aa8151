#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fermatci/errors.hpp"
#include "fermatci_app/grid.hpp"
#include "fermatci_app/job.hpp"
#include "fermatci_app/report.hpp"
#include "fermatci_app/runner.hpp"

using namespace fermatci;
using namespace fermatci::app;

int main(int argc, char** argv) {
  CLI::App cli{"Inseparable base-change chains and invariants of q-Fermat complete intersections"};
  cli.name("fermatci");
  std::string command;
  std::string input;
  std::string grid;
  std::string format = "text";
  std::optional<std::size_t> search_bound;
  std::size_t threads = 0;

  cli.add_option("command", command,
                 "validate | chain | invariants | genus-change | classify-conic | pfermat | bounds | report")
      ->required();
  auto* in_opt = cli.add_option("--input", input, "job file");
  auto* grid_opt = cli.add_option("--grid", grid, "file listing job paths or 'generic p e N r' lines");
  in_opt->excludes(grid_opt);
  cli.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  cli.add_option("--search-bound", search_bound, "candidates tried by pfermat")->check(CLI::PositiveNumber);
  cli.add_option("--threads", threads, "grid worker threads (0 = hardware)");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = cli.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunOptions options;
  options.search_bound = search_bound;
  if (command != "report") {
    options.command = parse_command(command);
    if (!options.command) {
      std::cerr << "fermatci: unknown command '" << command << "'\n";
      return 2;
    }
  }
  const Format fmt = format == "json" ? Format::Json : Format::Text;

  try {
    Report report;
    if (!grid.empty()) {
      report = run_grid(load_grid(grid), options, threads);
    } else if (!input.empty()) {
      report = run(load_job(input), options);
    } else {
      std::cerr << "fermatci: one of --input or --grid is required\n";
      return 2;
    }
    std::cout << render(report.json, fmt);
    return exit_code(report.status);
  } catch (const ParseError& e) {
    const std::string source = grid.empty() ? input : grid;
    std::cerr << source << ":" << e.what() << "\n";
    std::cout << render(input_error_report(source, e.what()).json, fmt);
    return 2;
  } catch (const Error& e) {
    std::cerr << "fermatci: " << e.what() << "\n";
    std::cout << render(input_error_report(grid.empty() ? input : grid, e.what()).json, fmt);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fermatci: internal error: " << e.what() << "\n";
    return 3;
  }
}

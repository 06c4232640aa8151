#ifndef FERMATCI_APP_GRID_HPP
#define FERMATCI_APP_GRID_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "fermatci_app/runner.hpp"

namespace fermatci::app {

/// One grid line: a job file (relative to the grid file) or `generic p e N r`.
struct GridEntry {
  std::string label;
  std::string path;
  bool generic = false;
  unsigned p = 0, e = 0, N = 0, r = 0;
};

/// Throws ParseError with line/column on malformed lines.
std::vector<GridEntry> parse_grid(const std::string& text, const std::string& base_dir = ".");
std::vector<GridEntry> load_grid(const std::string& path);

/// Every (p, e, N, r) with p in primes, e in exponents and 1 <= r < N <= max_N.
std::vector<GridEntry> generic_grid(const std::vector<unsigned>& primes, const std::vector<unsigned>& exponents,
                                    unsigned max_N);

/// Runs the entries concurrently; reports are merged in input order.
Report run_grid(const std::vector<GridEntry>& entries, const RunOptions& options = {}, std::size_t threads = 0);

}  // namespace fermatci::app

#endif  // FERMATCI_APP_GRID_HPP

#ifndef FERMATCI_APP_JOB_HPP
#define FERMATCI_APP_JOB_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fermatci/ratfunc.hpp"

namespace fermatci::app {

enum class Command { Validate, Chain, Invariants, GenusChange, ClassifyConic, PFermat, Bounds };

const char* to_string(Command c) noexcept;
std::optional<Command> parse_command(const std::string& name);
/// Fixed execution order; dependencies come first.
const std::vector<Command>& all_commands();

struct JobSpec {
  std::string source;  // file name or "<generic>"
  std::uint32_t prime = 0;
  std::optional<unsigned> e;
  std::optional<unsigned> N;
  std::optional<unsigned> r;
  std::vector<std::string> params;
  /// Row i holds the N + 1 coefficients of f_{i+1}, elements of F_p(params).
  RatMatrix coeffs;
  /// Multiply rows containing a 1 by fresh transcendentals before running.
  bool homogenize = false;
  /// Commands for `report`; empty means every applicable one.
  std::vector<Command> commands;
  /// a b c alpha beta gamma over F_p(params).
  std::optional<std::vector<RatFunc>> conic;
  /// Over F_p(s, t).
  std::optional<RatFunc> pfermat_a;
  /// Points over F_p(s_rt<p>, t_rt<p>).
  std::vector<std::array<RatFunc, 3>> pfermat_avoid;
  std::size_t search_bound = 64;
  std::uint64_t index_multiplier = 1;

  bool has_ci() const noexcept { return e.has_value(); }
};

/// Parses the line-oriented job format; throws ParseError with line/column.
JobSpec parse_job(const std::string& text, const std::string& source = "<input>");
JobSpec load_job(const std::string& path);

/// A job over fresh transcendentals s<i><j>, as used by grid files.
JobSpec generic_job(std::uint32_t p, unsigned e, unsigned N, unsigned r);

}  // namespace fermatci::app

#endif  // FERMATCI_APP_JOB_HPP

#ifndef FERMATCI_APP_RUNNER_HPP
#define FERMATCI_APP_RUNNER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fermatci_app/job.hpp"
#include "json.hpp"

namespace fermatci::app {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Ordered by severity; the worst status of a run decides the exit code.
enum class Status { Pass = 0, CertificateFailure = 1, InputError = 2, InternalError = 3 };

const char* to_string(Status s) noexcept;
Status worst(Status a, Status b) noexcept;
int exit_code(Status s) noexcept;

struct RunOptions {
  /// A single command (plus what it depends on); nullopt runs the full report.
  std::optional<Command> command;
  std::optional<std::size_t> search_bound;
};

struct Report {
  Json json;
  Status status = Status::Pass;
};

/// Commands executed for `job`, dependencies included, in execution order.
std::vector<Command> planned_commands(const JobSpec& job, const RunOptions& options);

Report run(const JobSpec& job, const RunOptions& options = {});

/// A report for a job that could not be loaded.
Report input_error_report(const std::string& source, const std::string& message);

}  // namespace fermatci::app

#endif  // FERMATCI_APP_RUNNER_HPP

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ffgap {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_validation = 2,
  exit_ambiguity = 3,
  exit_inconclusive = 4,
  exit_verification = 5,
};

struct RunConfig {
  std::string command;  // epsilon | gap | bound | verify | sweep
  std::string model;    // xxz | aklt | custom:<path>
  std::optional<double> xi;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> N;
  int m_max = 8;

  std::optional<double> tol_ker;
  std::optional<std::size_t> cap_dense;
  std::optional<std::uint64_t> seed;
  std::string solver = "auto";

  std::string output;  // empty: standard output
  std::string format;  // json | csv | text; empty picks the command default

  // verify
  std::string suite = "all";  // lemmas | theorem | aklt-closed-form | xxz-closed-form | all
  std::size_t trials = 500;
  std::string certificate;

  std::string timestamp;

  // sweep grids
  double xi_min = 0.1;
  double xi_max = 4.0;
  double xi_step = 0.1;
  int grid_m_max = 4;
  int grid_n_max = 4;
};

/// Rejects out-of-range or missing parameters for the chosen command.
void validate_config(const RunConfig& config);

/// Each command writes its payload to config.output (atomically) or to `out`,
/// diagnostics to `err`, and returns an ExitCode.
int cmd_epsilon(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_gap(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bound(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatch on config.command.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes `text` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace ffgap

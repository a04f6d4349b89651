#ifndef NCTRACK_CLI_HPP_
#define NCTRACK_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nctrack {

// Exit codes shared by the subcommands: 0 success, 1 invariant monitor
// failure, 2 configuration/kinetic refusal, 3 search exhausted.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMonitorFailure = 1;
inline constexpr int kExitRefused = 2;
inline constexpr int kExitNotFound = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> eps;
  std::optional<double> t_end;
  std::optional<std::string> c_star;  // number or "auto"
  std::vector<double> snapshot_times;
};

int cmd_run(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify_kinetic(const CommonOptions& options, std::ostream& out,
                       std::ostream& err);
int cmd_search(const std::string& case_name, const CommonOptions& options,
               std::ostream& out, std::ostream& err);

}  // namespace nctrack

#endif  // NCTRACK_CLI_HPP_

#pragma once

// Config-driven scenario runner behind the command line tool: JSON configs
// in, CSV/JSON artifacts out, with a stable hash of the effective
// configuration embedded in every file so reruns are attributable.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rlp {

// Schema violation; what() leads with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& msg)
      : std::runtime_error(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// FNV-1a over the canonical (sorted-key) dump of the effective config.
std::uint64_t fnv1a_hash(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

struct RunOptions {
  std::string config_path; // empty = no config file
  std::string out_dir = ".";
  long long seed = -1;      // >= 0 overrides the config seed
  int threads = 1;
  double tolerance = -1.0;  // > 0 overrides the default margin tolerance
};

// subcommand in {symbols, cq-run, direct-run, wave-run, verify-bounds,
// transfer, table1, propagation}. Returns the process exit code:
// 0 success, 1 numerical failure, 2 config error.
int run_scenario(const std::string& subcommand, const RunOptions& opt);

} // namespace rlp

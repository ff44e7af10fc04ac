#pragma once
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "sl2h/hecke.hpp"

namespace sl2h::reports {

using nlohmann::json;

struct EngineConfig {
  int p = 3;
  int precision = 0;  // N; 0 = 2 lambda_max + n + 4
  int level = 1;      // n
  int lambda_max = 5;
  std::string scalar_mode = "exact";
  std::optional<double> tolerance;  // float mode only
  size_t memory_cap = 50'000'000;
  std::string report_dir;
  unsigned long long seed = 7;

  // fills defaults and enforces the invariants; throws ConfigError
  void validate();
  json to_json() const;
};

// key=value lines, '#' comments; unknown keys are a ConfigError
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_config(EngineConfig& cfg, const std::map<std::string, std::string>& kv);

// zero | indicator:K<n> | shell:<m> | e_sigma:cusp<i> | m_rho:cusp<i> | file:<path>
// cusp<i> is the i-th cuspidal character of SL(2, F_p) in table order.
HeckeFunction parse_f(const std::string& spec, std::shared_ptr<const Tree> T);

json scalar_json(const Scalar& s);

// every report carries "anchor", "pass" and the config
json report_wo(const EngineConfig& cfg, const std::string& fspec, const std::string& gspec,
               const std::optional<std::string>& hspec = {});
// panel: elliptic | split | all; per pair WO(e_sigma), O(m_rho), char value and verdicts
json report_char_verify(const EngineConfig& cfg, const std::string& panel);
json report_weightless(const EngineConfig& cfg, const std::string& fspec, int trials);
// check: cocycle-identity | sigma-id | shift | commutator | all
json report_tate(const EngineConfig& cfg, const std::string& check, int trials);
// complex: star | elliptic | split-estimate | elliptic-estimate
json report_homology(const EngineConfig& cfg, const std::string& complex, int lambda);

// the elliptic and split panels used by char-verify
std::vector<std::array<mpq_class, 4>> elliptic_panel(int p);
std::vector<std::array<mpq_class, 4>> split_panel(int p);

}  // namespace sl2h::reports

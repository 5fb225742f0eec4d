#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "orbdiam/orbital.hpp"
#include "orbdiam/verify.hpp"
#include "orbdiam/witnesses.hpp"

namespace orbdiam {

enum ExitCode : int { exit_ok = 0, exit_claim_failed = 1, exit_hypothesis = 2, exit_budget = 3, exit_internal = 4 };

/// Class strings: "any", "ts", "nsp", "nd", "nd+", "nd-", "nd(odd)", with an optional
/// "[square]" / "[nonsquare]" suffix. SubspaceClass::str() output parses back.
SubspaceClass parse_class(const std::string& s);

/// One invocation of compute, verify, probe or witness.
struct RunConfig {
  std::string command = "compute";
  std::string target;  // statement id (verify), witness id (witness), conjecture (probe)
  ActionSpec spec;
  Strategy strategy = Strategy::automatic;
  std::uint64_t seed = 1;
  std::uint64_t pair_cap = 70'000;
  std::optional<int> l;                     // witness block size; defaults to t
  std::optional<std::uint32_t> lambda, mu;  // witness scalars by field code
};

/// Keys mirror the CLI flags: command, target, case, family, n, q, eps, t, class, field_auto,
/// graph_auto, strategy, seed, pair_cap, budget, l, lambda, mu.
RunConfig config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json config_to_json(const RunConfig& c);

struct CommandResult {
  int exit_code = exit_ok;
  nlohmann::ordered_json record;  // result, report, or {"error": {...}}
};

/// Reads the orbit cache directory from the environment when the spec names none.
/// Never throws: errors become {"error": {"kind", "message"}} with the matching exit code.
CommandResult run_config(const RunConfig& c);

/// One row per config in input order, computed on `threads` workers.
std::vector<CommandResult> run_sweep(const std::vector<RunConfig>& configs, int threads);
/// Highest exit code among the rows.
int sweep_exit_code(const std::vector<CommandResult>& rows);

/// Flat projection of JSON records: one line per record, dotted keys for nested objects,
/// arrays serialized as JSON text. The header is the union of keys in first-seen order.
std::string csv_projection(const std::vector<nlohmann::ordered_json>& records);

}  // namespace orbdiam

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbdiam/orbital.hpp"
#include "orbdiam/witnesses.hpp"

namespace orbdiam {

struct VerifyOptions {
  std::uint64_t pair_cap = 70'000;
  std::uint64_t seed = 1;
  bool run_witness = true;  // thm1: also run the matching witness construction
};

struct VerifyReport {
  std::string statement;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<PropertyCheck> claims;
  nlohmann::ordered_json certificate = nlohmann::ordered_json::object();
  std::vector<std::string> notes;
  bool internal_ok = true;  // partition, connectivity, transitivity, invariant agreement

  void claim(std::string name, bool ok, std::string detail = {});
  bool pass() const;  // at least one claim, all of them true
  nlohmann::ordered_json to_json() const;
};

/// A statement of the registry: `hypothesis` throws HypothesisError outside the statement's
/// range, `run` performs the computation and checks every claim instance.
struct Statement {
  std::string id;
  std::string claim;
  std::function<void(const ActionSpec&)> hypothesis;
  std::function<VerifyReport(const ActionSpec&, const VerifyOptions&)> run;
};

const std::vector<Statement>& statement_registry();
const Statement& find_statement(const std::string& id);

/// Checks the hypothesis, then runs. Throws HypothesisError, BudgetExceeded or std::invalid_argument.
VerifyReport verify_statement(const std::string& id, const ActionSpec& spec, const VerifyOptions& opt = {});

/// Witness that instantiates the lower bound for a case-b action, with its parameters, if any.
std::optional<WitnessInstance> witness_for(const ActionSpec& spec);

/// Conjecture probe on O2- 2-spaces with q = 3 mod 4. Never asserts the conjecture: per orbital
/// it reports the diameter with a certificate (exact pair BFS), or sampled evidence when |X|
/// exceeds the pair cap.
nlohmann::ordered_json probe_o2minus(const ActionSpec& spec, const VerifyOptions& opt, bool* internal_ok = nullptr);

}  // namespace orbdiam

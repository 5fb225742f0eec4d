#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "orbdiam/commands.hpp"

using namespace orbdiam;
using json = nlohmann::ordered_json;

namespace {

struct Flags {
  std::string action = "b", family = "sl", eps = "none", cls = "any", strategy = "auto";
  int n = 0, t = 1;
  std::uint32_t q = 0, p = 0, e = 1;
  bool field_auto = false, graph_auto = false;
  std::uint64_t seed = 1, pair_cap = 70'000, budget = 5'000'000;
  std::optional<int> l;
  std::optional<std::uint32_t> lambda, mu;
  std::string out, format = "json";
};

void add_action_flags(CLI::App* c, Flags& f) {
  c->add_option("--case", f.action, "action case: b (subspaces), c (subspace pairs), d (quadratic forms)")
      ->check(CLI::IsMember({"b", "c", "d"}));
  c->add_option("--family", f.family, "sl, sp, su, gu, omega, go");
  c->add_option("--n", f.n, "dimension of the natural module")->required();
  c->add_option("--q", f.q, "field order; q0 for su/gu, whose space lives over GF(q0^2)");
  c->add_option("--p", f.p, "characteristic, with --e, instead of --q");
  c->add_option("--e", f.e, "field degree over GF(p)");
  c->add_option("--eps", f.eps, "orthogonal type: +, -, o; form type for case d");
  c->add_option("--t", f.t, "subspace dimension t");
  c->add_option("--class", f.cls, "any, ts, nsp, nd, nd+, nd-, nd(odd), optionally [square]/[nonsquare]");
  c->add_flag("--field-auto", f.field_auto, "add the field automorphism");
  c->add_flag("--graph-auto", f.graph_auto, "add the graph automorphism (SL)");
  c->add_option("--strategy", f.strategy, "auto, invariant, stab_sample, pair_bfs")
      ->check(CLI::IsMember({"auto", "invariant", "stab_sample", "pair_bfs"}));
  c->add_option("--seed", f.seed, "seed for stabilizer sampling");
  c->add_option("--pair-cap", f.pair_cap, "largest |X| for exact pair BFS (needs 2|X|^2 bits)");
  c->add_option("--budget", f.budget, "largest orbit, in points");
  c->add_option("--out", f.out, "write the record here instead of stdout");
  c->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

RunConfig to_config(const std::string& command, const std::string& target, const Flags& f) {
  json j;
  j["command"] = command;
  j["target"] = target;
  j["case"] = f.action;
  j["family"] = f.family;
  j["n"] = f.n;
  std::uint64_t q = f.q;
  if (f.p) {
    q = 1;
    for (std::uint32_t i = 0; i < f.e; ++i) q *= f.p;
  }
  if (!q) throw std::invalid_argument("give --q, or --p and --e");
  j["q"] = q;
  j["eps"] = f.eps;
  j["t"] = f.t;
  j["class"] = f.cls;
  j["field_auto"] = f.field_auto;
  j["graph_auto"] = f.graph_auto;
  j["strategy"] = f.strategy;
  j["seed"] = f.seed;
  j["pair_cap"] = f.pair_cap;
  j["budget"] = f.budget;
  if (f.l) j["l"] = *f.l;
  if (f.lambda) j["lambda"] = *f.lambda;
  if (f.mu) j["mu"] = *f.mu;
  return config_from_json(j);
}

void emit(const std::vector<json>& records, bool array, const Flags& f) {
  std::string text;
  if (f.format == "csv")
    text = csv_projection(records);
  else
    text = (array ? json(records) : records.front()).dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(f.out);
    o << text;
    if (!o) throw std::runtime_error("cannot write " + f.out);
  }
}

int run_single(const std::string& command, const std::string& target, const Flags& f) {
  CommandResult r;
  try {
    r = run_config(to_config(command, target, f));
  } catch (const std::exception& e) {
    r = {exit_hypothesis, json{{"error", {{"kind", "parameter"}, {"message", e.what()}}}}};
  }
  emit({r.record}, false, f);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbital graphs and orbital diameters of classical groups in standard actions"};
  app.require_subcommand(1);
  Flags f;
  std::string target, grid;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool all = false;

  auto* compute = app.add_subcommand("compute", "build an action and compute every orbital graph and its diameter");
  add_action_flags(compute, f);

  auto* verify = app.add_subcommand("verify", "check a registered statement at the given parameters");
  verify->add_option("statement", target, "statement id (see 'orbdiam list')")->required();
  add_action_flags(verify, f);

  auto* probe = app.add_subcommand("probe", "collect evidence on an open conjecture without asserting it");
  probe->add_option("conjecture", target, "o2minus_q3mod4")->required();
  add_action_flags(probe, f);

  auto* witness = app.add_subcommand("witness", "instantiate and check a witness construction");
  witness->add_option("id", target, "witness id (see 'orbdiam list')");
  witness->add_flag("--all", all, "run every standard desk-scale instance");
  witness->add_option("--l", f.l, "block size of the display (defaults to t)");
  witness->add_option("--lambda", f.lambda, "field element (integer code)");
  witness->add_option("--mu", f.mu, "field element (integer code)");
  add_action_flags(witness, f);
  witness->get_option("--n")->required(false);

  auto* sweep = app.add_subcommand("sweep", "run a JSON array of run configs on a worker pool");
  sweep->add_option("grid", grid, "grid file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", f.out, "write the table here instead of stdout");
  sweep->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* list = app.add_subcommand("list", "list statement ids and witness ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return run_single("compute", "", f);
    if (verify->parsed()) return run_single("verify", target, f);
    if (probe->parsed()) {
      if (f.family == "sl") f.family = "omega";
      return run_single("probe", target, f);
    }
    if (witness->parsed()) {
      if (!all) {
        if (target.empty() || !f.n) throw std::invalid_argument("give a witness id and --n, or --all");
        return run_single("witness", target, f);
      }
      std::vector<json> records;
      int code = exit_ok;
      for (const auto& w : standard_witness_instances()) {
        try {
          auto R = run_witness(w.id, w.params);
          records.push_back(R.to_json());
          if (!R.pass()) code = std::max<int>(code, exit_claim_failed);
        } catch (const HypothesisError& e) {
          records.push_back({{"case", to_string(w.id)}, {"error", {{"kind", "hypothesis"}, {"message", e.what()}}}});
          code = std::max<int>(code, exit_hypothesis);
        }
      }
      emit(records, true, f);
      return code;
    }
    if (sweep->parsed()) {
      std::ifstream in(grid);
      json g = json::parse(in);
      if (!g.is_array()) throw std::invalid_argument("the grid file must hold a JSON array of run configs");
      std::vector<RunConfig> configs;
      std::vector<json> errors(g.size());
      std::vector<std::size_t> slot;
      for (std::size_t i = 0; i < g.size(); ++i) {
        try {
          configs.push_back(config_from_json(g[i]));
          slot.push_back(i);
        } catch (const std::exception& e) {
          errors[i] = {{"error", {{"kind", "parameter"}, {"message", e.what()}}}};
        }
      }
      auto rows = run_sweep(configs, threads);
      std::vector<json> table(g.size());
      int code = configs.size() == g.size() ? exit_ok : exit_hypothesis;
      for (std::size_t i = 0; i < g.size(); ++i) table[i] = {{"row", i}, {"config", g[i]}, {"exit_code", exit_hypothesis}};
      for (std::size_t i = 0; i < g.size(); ++i)
        if (!errors[i].is_null()) table[i]["record"] = errors[i];
      for (std::size_t r = 0; r < rows.size(); ++r) {
        table[slot[r]]["exit_code"] = rows[r].exit_code;
        table[slot[r]]["record"] = rows[r].record;
      }
      code = std::max(code, sweep_exit_code(rows));
      emit(table, true, f);
      return code;
    }
    if (list->parsed()) {
      json j;
      for (const auto& s : statement_registry()) j["statements"][s.id] = s.claim;
      for (auto id : all_witness_ids()) j["witnesses"].push_back(to_string(id));
      j["conjectures"] = {"o2minus_q3mod4"};
      std::cout << j.dump(2) << "\n";
      return exit_ok;
    }
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"kind", "parameter"}, {"message", e.what()}}}}.dump(2) << "\n";
    return exit_hypothesis;
  }
  return exit_ok;
}

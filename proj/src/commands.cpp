#include "orbdiam/commands.hpp"
#include "orbdiam/cache.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

namespace orbdiam {

using json = nlohmann::ordered_json;

SubspaceClass parse_class(const std::string& in) {
  SubspaceClass c;
  std::string s = in;
  if (auto b = s.find('['); b != std::string::npos) {
    std::string d = s.substr(b);
    if (d == "[square]")
      c.disc = 0;
    else if (d == "[nonsquare]")
      c.disc = 1;
    else
      throw std::invalid_argument("unknown discriminant suffix " + d);
    s = s.substr(0, b);
  }
  std::string sub;
  if (auto p = s.find('('); p != std::string::npos) {
    if (s.back() != ')') throw std::invalid_argument("bad class " + in);
    sub = s.substr(p + 1, s.size() - p - 2);
    s = s.substr(0, p);
  } else if (!s.empty() && (s.back() == '+' || s.back() == '-')) {
    sub = s.substr(s.size() - 1);
    s.pop_back();
  }
  c.tag = parse_tag(s);
  c.subtype = parse_subtype(sub);
  return c;
}

RunConfig config_from_json(const json& j) {
  static const std::vector<std::string> known = {"command", "target", "case", "family", "n", "q", "eps", "t", "class",
                                                 "field_auto", "graph_auto", "strategy", "seed", "pair_cap", "budget",
                                                 "l", "lambda", "mu"};
  if (!j.is_object()) throw std::invalid_argument("a run config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw std::invalid_argument("unknown config key '" + k + "'");
  RunConfig c;
  c.command = j.value("command", c.command);
  c.target = j.value("target", c.target);
  auto& s = c.spec;
  s.action = parse_case(j.value("case", std::string("b")));
  s.family = parse_family(j.value("family", std::string("sl")));
  s.n = j.at("n").get<int>();
  s.q = j.at("q").get<std::uint32_t>();
  s.sign = parse_sign(j.value("eps", std::string("none")));
  s.t = j.value("t", 1);
  s.cls = parse_class(j.value("class", std::string("any")));
  s.ext.field_auto = j.value("field_auto", false);
  s.ext.graph_auto = j.value("graph_auto", false);
  s.budget = j.value("budget", s.budget);
  c.strategy = parse_strategy(j.value("strategy", std::string("auto")));
  c.seed = j.value("seed", c.seed);
  c.pair_cap = j.value("pair_cap", c.pair_cap);
  if (j.contains("l")) c.l = j["l"].get<int>();
  if (j.contains("lambda")) c.lambda = j["lambda"].get<std::uint32_t>();
  if (j.contains("mu")) c.mu = j["mu"].get<std::uint32_t>();
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (!c.target.empty()) j["target"] = c.target;
  j["case"] = to_string(c.spec.action);
  j["family"] = to_string(c.spec.family);
  j["n"] = c.spec.n;
  j["q"] = c.spec.q;
  j["eps"] = to_string(c.spec.sign);
  j["t"] = c.spec.t;
  j["class"] = c.spec.cls.str();
  j["field_auto"] = c.spec.ext.field_auto;
  j["graph_auto"] = c.spec.ext.graph_auto;
  j["strategy"] = to_string(c.strategy);
  j["seed"] = c.seed;
  j["pair_cap"] = c.pair_cap;
  j["budget"] = c.spec.budget;
  if (c.l) j["l"] = *c.l;
  if (c.lambda) j["lambda"] = *c.lambda;
  if (c.mu) j["mu"] = *c.mu;
  return j;
}

namespace {

bool checks_ok(const Checks& k) {
  return k.partition && k.connectivity && k.vertex_transitivity.value_or(true) && k.invariant_matches.value_or(true);
}

CommandResult compute(const RunConfig& c) {
  auto A = make_action(c.spec);
  EnumerateOptions eo;
  eo.strategy = c.strategy;
  eo.seed = c.seed;
  eo.pair_cap = c.pair_cap;
  auto R = orbitals_enumerate(A, eo);
  return {checks_ok(R.checks) ? exit_ok : exit_internal, result_json(A, R)};
}

CommandResult verify(const RunConfig& c) {
  VerifyOptions o;
  o.pair_cap = c.pair_cap;
  o.seed = c.seed;
  auto V = verify_statement(c.target, c.spec, o);
  int code = !V.internal_ok ? exit_internal : V.pass() ? exit_ok : exit_claim_failed;
  return {code, V.to_json()};
}

CommandResult probe(const RunConfig& c) {
  if (c.target != "o2minus_q3mod4") throw std::invalid_argument("unknown conjecture '" + c.target + "'");
  VerifyOptions o;
  o.pair_cap = c.pair_cap;
  o.seed = c.seed;
  bool ok = true;
  auto j = probe_o2minus(c.spec, o, &ok);
  return {ok ? exit_ok : exit_internal, j};
}

CommandResult witness(const RunConfig& c) {
  WitnessParams p;
  p.family = c.spec.family;
  p.n = c.spec.n;
  p.q = c.spec.q;
  p.sign = c.spec.sign;
  p.t = c.spec.t;
  p.l = c.l.value_or(c.spec.t);
  p.pair_cap = c.pair_cap;
  p.budget = c.spec.budget;
  p.lambda = c.lambda;
  p.mu = c.mu;
  auto W = run_witness(parse_witness(c.target), p);
  return {W.pass() ? exit_ok : exit_claim_failed, W.to_json()};
}

CommandResult error(int code, const std::string& kind, const std::string& msg) {
  json j;
  j["error"] = {{"kind", kind}, {"message", msg}};
  return {code, j};
}

}  // namespace

CommandResult run_config(const RunConfig& in) {
  RunConfig c = in;
  if (c.spec.cache_dir.empty())
    if (auto d = cache_dir_from_env()) c.spec.cache_dir = d->string();
  try {
    if (c.command == "compute") return compute(c);
    if (c.command == "verify") return verify(c);
    if (c.command == "probe") return probe(c);
    if (c.command == "witness") return witness(c);
    return error(exit_hypothesis, "parameter", "unknown command '" + c.command + "'");
  } catch (const HypothesisError& e) {
    return error(exit_hypothesis, "hypothesis", e.what());
  } catch (const BudgetExceeded& e) {
    auto r = error(exit_budget, "budget", e.what());
    r.record["error"]["needed"] = e.needed();
    return r;
  } catch (const std::invalid_argument& e) {
    return error(exit_hypothesis, "parameter", e.what());
  } catch (const std::out_of_range& e) {
    return error(exit_hypothesis, "parameter", e.what());
  } catch (const std::exception& e) {
    return error(exit_internal, "internal", e.what());
  }
}

std::vector<CommandResult> run_sweep(const std::vector<RunConfig>& configs, int threads) {
  std::vector<CommandResult> out(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) out[i] = run_config(configs[i]);
  };
  const int w = std::max(1, std::min<int>(threads, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < w; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

int sweep_exit_code(const std::vector<CommandResult>& rows) {
  int code = exit_ok;
  for (const auto& r : rows) code = std::max(code, r.exit_code);
  return code;
}

std::string csv_projection(const std::vector<json>& records) {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  std::function<void(const std::string&, const json&, std::map<std::string, std::string>&)> flatten =
      [&](const std::string& prefix, const json& v, std::map<std::string, std::string>& row) {
        if (v.is_object()) {
          for (const auto& [k, x] : v.items()) flatten(prefix.empty() ? k : prefix + "." + k, x, row);
          return;
        }
        if (std::find(header.begin(), header.end(), prefix) == header.end()) header.push_back(prefix);
        row[prefix] = v.is_string() ? v.get<std::string>() : v.dump();
      };
  for (const auto& r : records) {
    rows.emplace_back();
    flatten("", r, rows.back());
  }
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + quote(header[i]);
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      auto it = row.find(header[i]);
      out += (i ? "," : "") + (it == row.end() ? std::string() : quote(it->second));
    }
    out += '\n';
  }
  return out;
}

}  // namespace orbdiam

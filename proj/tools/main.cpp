// rilsim command line: validate | simulate | query | strata | experiment.
// Exit codes: 0 success/decided, 1 invalid input or failure, 2 verdict refers
// to a court, 3 classification undefined for lack of communities.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rilsim/errors.hpp"
#include "rilsim/experiment.hpp"
#include "rilsim/json_io.hpp"
#include "rilsim/log.hpp"
#include "rilsim/metrics.hpp"
#include "rilsim/query.hpp"
#include "rilsim/scenario.hpp"
#include "rilsim/sim.hpp"
#include "rilsim/strata.hpp"
#include "rilsim/version.hpp"

namespace fs = std::filesystem;
using namespace rilsim;

namespace {

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NoCommunities: return 3;
    default: return 1;
  }
}

void print_diagnostics(const Error& e) {
  std::cerr << "error: " << e.what() << '\n';
  for (const Diagnostic& d : e.diagnostics())
    std::cerr << "  " << (d.pointer.empty() ? "/" : d.pointer) << ": " << d.message
              << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << text;
}

// Compact context syntax: "night+,rain-" (empty string = always).
Condition parse_context_arg(const std::string& text) {
  std::vector<Literal> literals;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    const char polarity = token.back();
    if (polarity != '+' && polarity != '-')
      throw Error(ErrorCode::InvalidInput,
                  "context literal '" + token + "' must end with + or -");
    const std::string tag = token.substr(0, token.size() - 1);
    if (!is_identifier(tag))
      throw Error(ErrorCode::InvalidInput,
                  "context tag '" + tag + "' is not a lowercase identifier");
    literals.push_back({tag, polarity == '+'});
  }
  return Condition::from_literals(std::move(literals));
}

SimulationState load_state_arg(const std::string& state_arg) {
  fs::path path(state_arg);
  if (fs::is_directory(path)) path /= "state.json";
  return state_from_json(read_file(path.string()));
}

int cmd_validate(const std::string& scenario_path) {
  try {
    Scenario sc = load_scenario(scenario_path);
    std::cout << "ok: scenario '" << scenario_path << "' is valid (digest "
              << sc.digest << ")\n";
    return 0;
  } catch (const Error& e) {
    print_diagnostics(e);
    return 1;
  }
}

int cmd_simulate(const std::string& scenario_path, std::optional<std::uint64_t> seed,
                 std::optional<std::uint32_t> rounds, const std::string& out_dir,
                 bool serial) {
  Scenario sc = load_scenario(scenario_path);
  const std::uint64_t effective_seed = seed.value_or(sc.params.seed);
  const std::uint32_t effective_rounds = rounds.value_or(sc.params.rounds_total);

  fs::create_directories(out_dir);
  std::ofstream events(fs::path(out_dir) / "events.jsonl", std::ios::binary);
  if (!events) throw Error(ErrorCode::Io, "cannot write events.jsonl");

  RunOptions options;
  options.seed_override = effective_seed;
  options.rounds_override = effective_rounds;
  options.mode = serial ? ExecMode::Serial : ExecMode::Parallel;
  options.on_round = [&](std::uint32_t, const std::vector<CourtEvent>& round_events) {
    events << events_to_jsonl(round_events);
  };
  SimulationState state = run(std::make_shared<Scenario>(sc), options);
  events.close();

  write_file(fs::path(out_dir) / "state.json", state_to_json(state, effective_seed));

  Json manifest;
  manifest["command"] = "simulate";
  manifest["version"] = kVersion;
  manifest["scenario"] = scenario_path;
  manifest["scenario_digest"] = sc.digest;
  manifest["seed"] = effective_seed;
  manifest["rounds"] = effective_rounds;
  manifest["courts"] = sc.courts.size();
  write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "wrote events.jsonl, state.json, manifest.json to " << out_dir << "\n";
  return 0;
}

int cmd_query(const std::string& state_arg, const std::string& action,
              const std::string& context_arg, const std::string& agent,
              const std::string& policy_path, std::optional<std::uint32_t> round) {
  SimulationState state = load_state_arg(state_arg);
  if (!is_identifier(action))
    throw Error(ErrorCode::InvalidInput, "action must be a lowercase identifier");
  const Condition context = parse_context_arg(context_arg);

  PriorityPolicy policy = state.scenario->priority_policy;
  if (!policy_path.empty()) {
    policy = policy_from_json(Json::parse(read_file(policy_path)), policy_path);
    validate_policy(policy);
  }

  QueryContext qc = context_for_agent(state, agent);
  const Verdict verdict =
      round ? decide_at_round(state, *round, action, context, qc, policy)
            : decide(state, action, context, qc, policy);

  Json out;
  out["outcome"] = to_string(verdict.outcome);
  out["refer_reason"] =
      verdict.refer_reason ? Json(to_string(*verdict.refer_reason)) : Json(nullptr);
  out["supporting_lps"] = verdict.supporting_lps;
  out["suggested_court"] =
      verdict.suggested_court ? Json(*verdict.suggested_court) : Json(nullptr);
  std::cout << out.dump(2) << "\n";
  return referral_needed(verdict) ? 2 : 0;
}

int cmd_strata(const std::string& scenario_path, std::uint32_t time,
               const std::string& person, const std::string& assertion,
               const std::string& system) {
  Scenario sc = load_scenario(scenario_path);
  std::vector<std::string> community_ids;
  for (const auto& c : sc.communities) community_ids.push_back(c.id);
  std::map<std::string, std::string> placement;
  for (const auto& c : sc.courts) placement.emplace(c.id, c.community);
  CommunityGraph graph = CommunityGraph::build(community_ids, sc.edges, placement);
  StrataContext ctx = make_strata_context(sc, graph);

  Json out;
  out["time"] = time;
  if (!person.empty()) {
    const auto rec = std::find_if(sc.persons.begin(), sc.persons.end(),
                                  [&](const PersonRecord& p) { return p.id == person; });
    if (rec == sc.persons.end())
      throw Error(ErrorCode::InvalidInput, "unknown person '" + person + "'");
    auto level = membership_level(*rec, ctx, time);
    out["person"] = person;
    out["level"] = level ? Json(*level) : Json(nullptr);
  } else if (!assertion.empty()) {
    AssertionClassification c = classify_assertion(assertion, sc, ctx);
    out["assertion"] = assertion;
    out["labels"] = c.labels();
    out["level5_total"] = c.level5_total;
    out["level6_total"] = c.level6_total;
    out["shared_mainstream"] =
        c.shared_mainstream ? Json(*c.shared_mainstream) : Json(nullptr);
  } else if (!system.empty()) {
    EndorsementClassification c = classify_endorsement(system, sc, ctx);
    out["system"] = system;
    out["labels"] = c.labels();
    out["level5_total"] = c.level5_total;
    out["level6_total"] = c.level6_total;
    out["shared_mainstream"] =
        c.shared_mainstream ? Json(*c.shared_mainstream) : Json(nullptr);
  } else {
    Json strata_json;
    for (int n = 0; n <= 7; ++n)
      strata_json[std::to_string(n)] = stratum(sc.persons, ctx, n, time);
    out["strata"] = std::move(strata_json);
    out["level5_communities"] =
        std::vector<std::string>(ctx.level5_communities.begin(),
                                 ctx.level5_communities.end());
    out["level6_communities"] =
        std::vector<std::string>(ctx.level6_communities.begin(),
                                 ctx.level6_communities.end());
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_experiment(const std::string& kind_arg, const std::string& scenario_path,
                   const std::vector<std::uint64_t>& seeds, const std::string& out_dir,
                   bool serial) {
  auto kind = experiment_kind_from_string(kind_arg);
  if (!kind)
    throw Error(ErrorCode::InvalidInput,
                "unknown experiment kind '" + kind_arg +
                    "' (expected Convergence, Workload, or Perturbation)");
  Scenario sc = load_scenario(scenario_path);
  ExperimentReport report = run_experiment(
      *kind, sc, seeds, serial ? ExecMode::Serial : ExecMode::Parallel);
  for (const std::string& path : report.write(out_dir))
    std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic court-network simulator and permissibility query engine"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  std::string validate_scenario;
  validate->add_option("--scenario", validate_scenario, "scenario JSON path")->required();

  auto* simulate = app.add_subcommand("simulate", "run a scenario and persist outputs");
  std::string sim_scenario, sim_out;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::uint32_t> sim_rounds;
  bool sim_serial = false;
  simulate->add_option("--scenario", sim_scenario, "scenario JSON path")->required();
  simulate->add_option("--seed", sim_seed, "seed override");
  simulate->add_option("--rounds", sim_rounds, "round-count override");
  simulate->add_option("--out", sim_out, "output directory")->required();
  simulate->add_flag("--serial", sim_serial, "use the serial reference engine");

  auto* query = app.add_subcommand("query", "decide permissibility from a state snapshot");
  std::string q_state, q_action, q_context, q_agent, q_policy;
  std::optional<std::uint32_t> q_round;
  query->add_option("--state", q_state, "state.json path or simulate output dir")->required();
  query->add_option("--action", q_action, "action token")->required();
  query->add_option("--context", q_context, "context literals, e.g. night+,rain-");
  query->add_option("--agent", q_agent, "asking agent id")->required();
  query->add_option("--policy", q_policy, "priority policy JSON override");
  query->add_option("--round", q_round, "evaluate against bases as of this round");

  auto* strata_cmd = app.add_subcommand("strata", "membership levels and classifications");
  std::string st_scenario, st_person, st_assertion, st_system;
  std::uint32_t st_time = 0;
  strata_cmd->add_option("--scenario", st_scenario, "scenario JSON path")->required();
  strata_cmd->add_option("--time", st_time, "evaluation time")->required();
  auto* opt_person = strata_cmd->add_option("--person", st_person, "person id");
  auto* opt_assertion = strata_cmd->add_option("--assertion", st_assertion, "assertion id");
  auto* opt_system = strata_cmd->add_option("--system", st_system, "system id");
  opt_person->excludes(opt_assertion)->excludes(opt_system);
  opt_assertion->excludes(opt_system);

  auto* experiment = app.add_subcommand("experiment", "run a reporting experiment");
  std::string ex_kind, ex_scenario, ex_out;
  std::vector<std::uint64_t> ex_seeds;
  bool ex_serial = false;
  experiment->add_option("--kind", ex_kind, "Convergence | Workload | Perturbation")->required();
  experiment->add_option("--scenario", ex_scenario, "scenario JSON path")->required();
  experiment->add_option("--seeds", ex_seeds, "seed list")->required()->delimiter(',');
  experiment->add_option("--out", ex_out, "output directory")->required();
  experiment->add_flag("--serial", ex_serial, "use the serial reference engine");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(validate_scenario);
    if (simulate->parsed())
      return cmd_simulate(sim_scenario, sim_seed, sim_rounds, sim_out, sim_serial);
    if (query->parsed())
      return cmd_query(q_state, q_action, q_context, q_agent, q_policy, q_round);
    if (strata_cmd->parsed())
      return cmd_strata(st_scenario, st_time, st_person, st_assertion, st_system);
    if (experiment->parsed())
      return cmd_experiment(ex_kind, ex_scenario, ex_seeds, ex_out, ex_serial);
  } catch (const Error& e) {
    print_diagnostics(e);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

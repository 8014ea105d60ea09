// Copyright 2026 The Hetanon Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetanon/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "hetanon/anon_struct.hpp"
#include "hetanon/anon_text.hpp"
#include "hetanon/attack.hpp"
#include "hetanon/config.hpp"
#include "hetanon/datagen.hpp"
#include "hetanon/eval.hpp"
#include "hetanon/io.hpp"
#include "hetanon/target.hpp"

namespace hetanon::cli {

namespace fs = std::filesystem;

namespace {

// Raised for invalid values detected after CLI11 has accepted the syntax.
class UsageError : public Error {
 public:
  using Error::Error;
};

fs::path output_path(const std::string& given, const char* fallback_name) {
  if (!given.empty()) {
    fs::path p(given);
    if (p.is_relative()) {
      if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = fs::path(dir) / p;
    }
    return p;
  }
  const char* dir = std::getenv(kOutputDirEnv);
  if (!dir || !*dir) {
    throw UsageError(std::string("--out is required (or set ") + kOutputDirEnv + ")");
  }
  return fs::path(dir) / fallback_name;
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

template <typename T>
void override_if(const CLI::Option* opt, T& field, const T& value) {
  if (opt->count() > 0) field = value;
}

struct GenArgs {
  std::string config;
  std::string out;
  std::size_t users = 0;
  std::uint64_t seed = 0;
  CLI::Option* users_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

struct StructArgs {
  std::string method = "naive";
  double p = 0.1;
  std::size_t k = 10;
  std::uint64_t seed = 1;
  std::string in;
  std::string out;
};

struct TextArgs {
  std::string method = "naive";
  double epsilon = 0.01;
  double sensitivity = 0;
  std::uint64_t seed = 1;
  std::string in;
  std::string out;
  CLI::Option* sensitivity_opt = nullptr;
};

struct QueryArgs {
  std::string target;
  std::vector<std::string> words;
  std::size_t limit = target::kDefaultSearchLimit;
  std::string match = "any";
  std::uint64_t user = 0;
  std::size_t theta = 50;
  std::size_t lambda = 20;
  std::uint64_t seed = 1;
  CLI::Option* user_opt = nullptr;
};

struct AttackArgs {
  std::string dataset;
  std::string target;
  std::string truth;
  std::string metric = "improved";
  std::string config;
  std::string out;
  std::string match = "any";
  attack::AttackConfig cfg;
  attack::AttackConfig flags;
  std::vector<std::function<void(attack::AttackConfig&)>> overrides;
};

struct EvalArgs {
  std::string network;
  std::string plan;
  std::string out;
  std::size_t jobs = 1;
  CLI::Option* jobs_opt = nullptr;
};

template <typename T>
void add_attack_flag(CLI::App* app, AttackArgs& a, const std::string& name, T attack::AttackConfig::*field,
                     const std::string& help) {
  auto* opt = app->add_option(name, a.flags.*field, help)->capture_default_str();
  a.overrides.push_back([opt, field, &a](attack::AttackConfig& cfg) {
    if (opt->count() > 0) cfg.*field = a.flags.*field;
  });
}

int run_datagen(const GenArgs& a, std::ostream& out) {
  datagen::GenConfig cfg;
  if (!a.config.empty()) cfg = config::parse_gen_config(config::load_key_values(a.config));
  override_if(a.users_opt, cfg.n_users, a.users);
  override_if(a.seed_opt, cfg.rng_seed, a.seed);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const auto gen = datagen::generate(cfg);
  const fs::path path = output_path(a.out, "network.txt");
  ensure_parent(path);
  io::save_network(gen.network, path);
  std::vector<std::pair<UserId, std::uint32_t>> topics;
  for (std::size_t i = 0; i < gen.network.size(); ++i) topics.emplace_back(gen.network.users[i], gen.topics[i]);
  io::save_topics(topics, io::topics_path(path));
  out << "wrote " << path.string() << ": " << gen.network.size() << " users, "
      << gen.network.edges.size() << " edges, " << gen.network.post_count() << " posts\n";
  return kExitOk;
}

int run_anonymize(const StructArgs& a, std::ostream& out) {
  anon::StructAnonConfig cfg;
  try {
    cfg.method = anon::parse_struct_method(a.method);
    cfg.p = a.p;
    cfg.k = a.k;
    cfg.rng_seed = a.seed;
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const SocialNetwork network = io::load_network(a.in);
  const auto release = anon::anonymize_structure(network, cfg);
  AnonymizedDataset d = anon::assemble_release(network, release);
  d.params["structural"] = a.method;
  d.params["p"] = io::format_real(a.p);
  d.params["k_anon"] = std::to_string(a.k);
  d.params["textual"] = "naive";
  const fs::path path = output_path(a.out, "dataset.txt");
  ensure_parent(path);
  io::save_dataset(d, path);
  io::save_truth(release.ground_truth(network), io::truth_path(path));
  out << "wrote " << path.string() << ": " << d.users.size() << " users, " << d.edges.size()
      << " edges, " << release.edits << " edge edits";
  if (release.warnings) out << ", " << release.warnings << " requested swaps not found";
  out << "\n";
  return kExitOk;
}

int run_anonymize_text(const TextArgs& a, std::ostream& out) {
  anon::TextMethod method;
  anon::DPConfig cfg;
  try {
    method = anon::parse_text_method(a.method);
    cfg.epsilon = a.epsilon;
    cfg.rng_seed = a.seed;
    if (a.sensitivity_opt->count() > 0) cfg.sensitivity_override = a.sensitivity;
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  AnonymizedDataset d = io::load_dataset(a.in);
  anon::apply_text_method(d, method, cfg);
  d.params["textual"] = a.method;
  if (method == anon::TextMethod::dp) d.params["epsilon"] = io::format_real(a.epsilon);
  const fs::path path = output_path(a.out, "dataset.txt");
  ensure_parent(path);
  io::save_dataset(d, path);
  const fs::path truth = io::truth_path(a.in);
  if (fs::exists(truth) && fs::absolute(truth) != fs::absolute(io::truth_path(path))) {
    fs::copy_file(truth, io::truth_path(path), fs::copy_options::overwrite_existing);
  }
  out << "wrote " << path.string() << " (" << a.method << ", " << d.post_word.rows() << " x "
      << d.post_word.cols() << ")\n";
  return kExitOk;
}

int run_query(const QueryArgs& a, std::ostream& out) {
  target::MatchMode mode;
  try {
    mode = target::parse_match_mode(a.match);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const target::TargetNetwork net(io::load_network(a.target), mode);
  target::TargetClient client(net);
  if (a.user_opt->count() > 0) {
    const UserId id{a.user};
    const auto deg = client.degree_of(id);
    out << "user " << id.value << " in_degree " << deg.in << " out_degree " << deg.out << "\n";
    Rng rng(a.seed);
    const auto sample = client.neighbors(id, a.lambda, rng);
    out << "followers";
    for (UserId w : sample.followers) out << ' ' << w.value;
    out << "\nfollowees";
    for (UserId w : sample.followees) out << ' ' << w.value;
    out << "\n";
    for (const Post& p : client.recent_posts(id, a.theta)) out << "post " << p.raw << "\n";
  }
  if (!a.words.empty()) {
    for (UserId u : client.search(target::SearchQuery::of(a.words), a.limit)) out << u.value << "\n";
  }
  if (a.words.empty() && a.user_opt->count() == 0) throw UsageError("give --words and/or --user");
  return kExitOk;
}

int run_attack(AttackArgs& a, std::ostream& out) {
  attack::AttackConfig cfg;
  if (!a.config.empty()) cfg = config::parse_attack_config(config::load_key_values(a.config));
  for (auto& f : a.overrides) f(cfg);
  attack::Metric metric;
  target::MatchMode mode;
  try {
    metric = attack::parse_metric(a.metric);
    mode = target::parse_match_mode(a.match);
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const AnonymizedDataset d = io::load_dataset(a.dataset);
  const target::TargetNetwork net(io::load_network(a.target), mode);
  const fs::path truth_file = a.truth.empty() ? io::truth_path(a.dataset) : fs::path(a.truth);
  std::optional<GroundTruth> truth;
  if (fs::exists(truth_file)) truth = io::load_truth(truth_file);
  attack::SeedMap seeds;
  if (metric == attack::Metric::narayanan || metric == attack::Metric::ada) {
    if (!truth) throw UsageError("metric " + a.metric + " needs seed users from " + truth_file.string());
    seeds = attack::draw_seed_map(*truth, cfg.seed_count, derive_seed(cfg.rng_seed, {4}));
  }
  target::TargetClient client(net);
  attack::Attack engine(d, client, cfg, metric, std::move(seeds));
  const auto result = engine.run();
  const fs::path path = output_path(a.out, "mapping.csv");
  ensure_parent(path);
  std::ofstream file(path);
  if (!file) throw Error("cannot write " + path.string());
  attack::write_mapping(file, result);
  out << "wrote " << path.string() << ": " << result.users.size() << " users, "
      << result.budget.search_calls << " searches, " << result.budget.post_calls
      << " post requests, " << result.budget.neighbor_calls << " neighbor requests\n";
  if (truth) {
    out << "success rate " << io::format_real(eval::success_rate(result, *truth, cfg.top_h)) << "\n";
  }
  return kExitOk;
}

int run_evaluate(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  eval::ExperimentPlan plan = eval::load_plan(a.plan);
  override_if(a.jobs_opt, plan.jobs, a.jobs);
  const SocialNetwork network = io::load_network(a.network);
  const fs::path dir = output_path(a.out, ".");
  fs::create_directories(dir);
  const auto report = eval::run_matrix(plan, network, [&](const std::string& msg) { err << msg << "\n"; });
  {
    std::ofstream csv(dir / "report.csv");
    if (!csv) throw Error("cannot write " + (dir / "report.csv").string());
    eval::write_report_csv(csv, report);
  }
  {
    std::ofstream txt(dir / "report.txt");
    eval::write_report_text(txt, report);
  }
  out << "wrote " << (dir / "report.csv").string() << " and report.txt: " << report.cells.size()
      << " cells\n";
  return kExitOk;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anonymization and de-anonymization experiments on heterogeneous social data",
               "hetanon"};
  app.require_subcommand(1);
  app.footer(std::string("Environment: ") + kOutputDirEnv +
             " sets the directory for relative or omitted output paths.");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("datagen", "Generate a synthetic network");
  gen_cmd->add_option("--config", gen.config, "key = value generator settings")->check(CLI::ExistingFile);
  gen_cmd->add_option("--out", gen.out, "Network file to write (a .topics sidecar goes next to it)");
  gen.users_opt = gen_cmd->add_option("--users", gen.users, "Number of users");
  gen.seed_opt = gen_cmd->add_option("--seed", gen.seed, "Generator seed");

  StructArgs st;
  auto* st_cmd = app.add_subcommand("anonymize", "Pseudonymize a network and anonymize its graph");
  st_cmd->add_option("--method", st.method,
                     "naive, sparsification, kdeg_add, kdeg_add_del, switching or perturbation")
      ->capture_default_str();
  st_cmd->add_option("--p", st.p, "Fraction of edges edited")->capture_default_str();
  st_cmd->add_option("--k-anon,--k", st.k, "Degree anonymity level")->capture_default_str();
  st_cmd->add_option("--seed", st.seed, "Anonymization seed")->capture_default_str();
  st_cmd->add_option("--in", st.in, "Network file")->required()->check(CLI::ExistingFile);
  st_cmd->add_option("--out", st.out, "Dataset file to write (ground truth goes to <out>.truth)");

  TextArgs tx;
  auto* tx_cmd = app.add_subcommand("anonymize-text", "Anonymize the post-word matrix of a dataset");
  tx_cmd->add_option("--method", tx.method, "naive or dp")->capture_default_str();
  tx_cmd->add_option("--epsilon", tx.epsilon, "Privacy budget")->capture_default_str();
  tx.sensitivity_opt = tx_cmd->add_option("--sensitivity", tx.sensitivity, "Fixed noise sensitivity");
  tx_cmd->add_option("--seed", tx.seed, "Noise seed")->capture_default_str();
  tx_cmd->add_option("--in", tx.in, "Dataset file")->required()->check(CLI::ExistingFile);
  tx_cmd->add_option("--out", tx.out, "Dataset file to write");

  QueryArgs q;
  auto* q_cmd = app.add_subcommand("query", "Inspect a network through the target API");
  q_cmd->add_option("--target", q.target, "Network file")->required()->check(CLI::ExistingFile);
  q_cmd->add_option("--words", q.words, "Search words");
  q_cmd->add_option("--limit", q.limit, "Maximum search results")->capture_default_str();
  q_cmd->add_option("--match", q.match, "all or any")->capture_default_str();
  q.user_opt = q_cmd->add_option("--user", q.user, "Show degree, neighbors and recent posts");
  q_cmd->add_option("--theta", q.theta, "Recent posts shown")->capture_default_str();
  q_cmd->add_option("--lambda", q.lambda, "Neighbors sampled per direction")->capture_default_str();
  q_cmd->add_option("--seed", q.seed, "Sampling seed")->capture_default_str();

  AttackArgs at;
  auto* at_cmd = app.add_subcommand("attack", "De-anonymize a dataset against a target network");
  at_cmd->add_option("--dataset", at.dataset, "Anonymized dataset")->required()->check(CLI::ExistingFile);
  at_cmd->add_option("--target", at.target, "Target network")->required()->check(CLI::ExistingFile);
  at_cmd->add_option("--truth", at.truth, "Ground truth (default <dataset>.truth)");
  at_cmd->add_option("--metric", at.metric, "improved, simple, ada or narayanan")->capture_default_str();
  at_cmd->add_option("--config", at.config, "key = value attack settings")->check(CLI::ExistingFile);
  at_cmd->add_option("--out", at.out, "Mapping CSV to write");
  at_cmd->add_option("--match", at.match, "Search semantics, all or any")->capture_default_str();
  add_attack_flag(at_cmd, at, "--k-posts", &attack::AttackConfig::k_posts, "Revealing posts per user");
  add_attack_flag(at_cmd, at, "--alpha", &attack::AttackConfig::alpha, "Structure weight");
  add_attack_flag(at_cmd, at, "--beta", &attack::AttackConfig::beta, "Individual weight");
  add_attack_flag(at_cmd, at, "--lambda", &attack::AttackConfig::lambda, "Neighbor sample size");
  add_attack_flag(at_cmd, at, "--theta", &attack::AttackConfig::theta, "Recent posts per candidate");
  add_attack_flag(at_cmd, at, "--bins", &attack::AttackConfig::bins, "Degree bins");
  add_attack_flag(at_cmd, at, "--bin-width", &attack::AttackConfig::bin_width, "Degree bin width");
  add_attack_flag(at_cmd, at, "--top-h", &attack::AttackConfig::top_h, "Candidates kept per user");
  add_attack_flag(at_cmd, at, "--nu", &attack::AttackConfig::seed_count, "Seed users for baselines");
  add_attack_flag(at_cmd, at, "--search-limit", &attack::AttackConfig::search_limit,
                  "Results per search");
  add_attack_flag(at_cmd, at, "--seed", &attack::AttackConfig::rng_seed, "Sampling seed");
  add_attack_flag(at_cmd, at, "--jobs", &attack::AttackConfig::jobs, "Worker threads");

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "Run the anonymization x attack matrix");
  ev_cmd->add_option("--network", ev.network, "Network file")->required()->check(CLI::ExistingFile);
  ev_cmd->add_option("--plan", ev.plan, "key = value experiment plan")->required()->check(CLI::ExistingFile);
  ev_cmd->add_option("--out", ev.out, "Output directory for report.csv and report.txt");
  ev.jobs_opt = ev_cmd->add_option("--jobs", ev.jobs, "Cells run concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_datagen(gen, out);
    if (st_cmd->parsed()) return run_anonymize(st, out);
    if (tx_cmd->parsed()) return run_anonymize_text(tx, out);
    if (q_cmd->parsed()) return run_query(q, out);
    if (at_cmd->parsed()) return run_attack(at, out);
    if (ev_cmd->parsed()) return run_evaluate(ev, out, err);
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    err << "error: infeasible: " << e.what() << "\n";
    return kExitFailure;
  } catch (const NotFoundError& e) {
    err << "error: not found: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hetanon::cli

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
#include "hetanon/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>

#include "hetanon/config.hpp"
#include "hetanon/parallel.hpp"

namespace hetanon::eval {

namespace {

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

}  // namespace

void ExperimentPlan::validate() const {
  if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (structural.empty() || textual.empty() || metrics.empty()) {
    throw ConfigError("plan needs at least one structural method, textual method and metric");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must be in [0, 1]");
  if (k_anon < 1) throw ConfigError("k_anon must be at least 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  attack.validate();
}

ExperimentPlan parse_plan(std::istream& in) {
  ExperimentPlan plan;
  for (const auto& kv : config::read_key_values(in)) {
    const std::string& key = kv.key;
    try {
      if (key == "jobs") {
        plan.jobs = config::as_count(kv);
      } else if (config::apply(plan.attack, kv)) {
        continue;
      } else if (key == "structural") {
        plan.structural.clear();
        for (const auto& v : config::as_list(kv)) plan.structural.push_back(anon::parse_struct_method(v));
      } else if (key == "textual") {
        plan.textual.clear();
        for (const auto& v : config::as_list(kv)) plan.textual.push_back(anon::parse_text_method(v));
      } else if (key == "metrics") {
        plan.metrics.clear();
        for (const auto& v : config::as_list(kv)) plan.metrics.push_back(attack::parse_metric(v));
      } else if (key == "repetitions") {
        plan.repetitions = config::as_count(kv);
      } else if (key == "seed") {
        plan.base_seed = config::as_count(kv);
      } else if (key == "p") {
        plan.p = config::as_number(kv);
      } else if (key == "k_anon") {
        plan.k_anon = config::as_count(kv);
      } else if (key == "epsilon") {
        plan.epsilon = config::as_number(kv);
      } else if (key == "match") {
        plan.match_mode = target::parse_match_mode(kv.value);
      } else {
        throw ParseError(kv.line, "unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ParseError(kv.line, e.what());
    }
  }
  plan.validate();
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open plan " + path.string());
  return parse_plan(in);
}

int case_label(anon::StructMethod s, anon::TextMethod t) {
  const bool structure = s != anon::StructMethod::naive;
  const bool text = t != anon::TextMethod::naive;
  if (!structure) return text ? 2 : 1;
  return text ? 4 : 3;
}

double success_rate(const Mapping& mapping, const GroundTruth& truth, std::size_t h) {
  if (mapping.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& [pseudonym, ranked] : mapping) {
    const auto real = truth.find(pseudonym);
    if (!real) continue;
    const std::size_t take = std::min(h, ranked.size());
    if (std::find(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), *real) !=
        ranked.begin() + static_cast<std::ptrdiff_t>(take)) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(mapping.size());
}

double success_rate(const attack::AttackResult& result, const GroundTruth& truth, std::size_t h) {
  Mapping m;
  m.reserve(result.users.size());
  for (const auto& u : result.users) {
    std::vector<UserId> ids;
    for (const auto& c : u.ranked) ids.push_back(c.candidate);
    m.emplace_back(u.pseudonym, std::move(ids));
  }
  return success_rate(m, truth, h);
}

const CellResult* SuccessReport::find(anon::StructMethod s, anon::TextMethod t,
                                      attack::Metric m) const {
  for (const auto& c : cells) {
    if (c.structural == s && c.textual == t && c.metric == m) return &c;
  }
  return nullptr;
}

std::uint64_t cell_seed(std::uint64_t base, std::size_t rep, anon::StructMethod s,
                        anon::TextMethod t) {
  return derive_seed(base, {rep, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(t)});
}

SuccessReport run_matrix(const ExperimentPlan& plan, const SocialNetwork& network,
                         const Progress& progress) {
  plan.validate();
  const target::TargetNetwork target(network, plan.match_mode);

  SuccessReport report;
  for (auto s : plan.structural) {
    for (auto t : plan.textual) {
      for (auto m : plan.metrics) {
        CellResult c;
        c.structural = s;
        c.textual = t;
        c.metric = m;
        c.case_label = case_label(s, t);
        c.n_users = network.size();
        c.rates.assign(plan.repetitions, std::nan(""));
        for (std::size_t r = 0; r < plan.repetitions; ++r) c.seeds.push_back(cell_seed(plan.base_seed, r, s, t));
        report.cells.push_back(std::move(c));
      }
    }
  }
  const std::size_t nm = plan.metrics.size();
  const std::size_t groups = plan.structural.size() * plan.textual.size() * plan.repetitions;
  std::vector<std::vector<std::string>> errors(report.cells.size(),
                                               std::vector<std::string>(plan.repetitions));
  std::vector<std::vector<target::BudgetTotals>> budgets(
      report.cells.size(), std::vector<target::BudgetTotals>(plan.repetitions));
  std::mutex progress_mutex;

  parallel_for(groups, plan.jobs, [&](std::size_t g) {
    const std::size_t rep = g % plan.repetitions;
    const std::size_t pair = g / plan.repetitions;
    const std::size_t si = pair / plan.textual.size();
    const std::size_t ti = pair % plan.textual.size();
    const auto s = plan.structural[si];
    const auto t = plan.textual[ti];
    const std::size_t first = pair * nm;
    const std::uint64_t seed = cell_seed(plan.base_seed, rep, s, t);

    AnonymizedDataset dataset;
    GroundTruth truth;
    try {
      anon::StructAnonConfig sc;
      sc.method = s;
      sc.p = plan.p;
      sc.k = plan.k_anon;
      sc.rng_seed = derive_seed(seed, {1});
      const auto release = anon::anonymize_structure(network, sc);
      dataset = anon::assemble_release(network, release);
      truth = release.ground_truth(network);
      anon::DPConfig dc;
      dc.epsilon = plan.epsilon;
      dc.rng_seed = derive_seed(seed, {2});
      anon::apply_text_method(dataset, t, dc);
    } catch (const Error& e) {
      for (std::size_t mi = 0; mi < nm; ++mi) errors[first + mi][rep] = e.what();
      return;
    }
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const auto m = plan.metrics[mi];
      try {
        attack::AttackConfig ac = plan.attack;
        ac.rng_seed = derive_seed(seed, {3, mi});
        ac.jobs = 1;
        target::TargetClient client(target);
        attack::SeedMap seeds;
        if (m == attack::Metric::narayanan || m == attack::Metric::ada) {
          seeds = attack::draw_seed_map(truth, ac.seed_count, derive_seed(seed, {4}));
        }
        attack::Attack a(dataset, client, ac, m, std::move(seeds));
        const auto result = a.run();
        report.cells[first + mi].rates[rep] = success_rate(result, truth, ac.top_h);
        budgets[first + mi][rep] = result.budget;
      } catch (const Error& e) {
        errors[first + mi][rep] = e.what();
      }
    }
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(std::string(anon::to_string(s)) + "/" + std::string(anon::to_string(t)) +
               " repetition " + std::to_string(rep + 1) + " done");
    }
  });

  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    CellResult& c = report.cells[i];
    std::vector<double> ok;
    for (std::size_t r = 0; r < plan.repetitions; ++r) {
      c.budget += budgets[i][r];
      if (!errors[i][r].empty()) {
        if (!c.error.empty()) c.error += "; ";
        c.error += "rep " + std::to_string(r + 1) + ": " + errors[i][r];
      } else {
        ok.push_back(c.rates[r]);
      }
    }
    c.rates = ok;
    if (ok.empty()) continue;
    double sum = 0.0;
    for (double x : ok) sum += x;
    c.mean = sum / static_cast<double>(ok.size());
    if (ok.size() > 1) {
      double sq = 0.0;
      for (double x : ok) sq += (x - c.mean) * (x - c.mean);
      c.stddev = std::sqrt(sq / static_cast<double>(ok.size() - 1));
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const SuccessReport& report) {
  out << "structural,textual,metric,mean_X,std_X,case,n_users,seeds,search_calls,post_calls,"
         "neighbor_calls,error\n";
  for (const auto& c : report.cells) {
    std::string seeds;
    for (std::size_t i = 0; i < c.seeds.size(); ++i) {
      if (i) seeds += ';';
      seeds += std::to_string(c.seeds[i]);
    }
    std::string error = c.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << anon::to_string(c.structural) << ',' << anon::to_string(c.textual) << ','
        << attack::to_string(c.metric) << ',' << fixed6(c.mean) << ',' << fixed6(c.stddev) << ','
        << c.case_label << ',' << c.n_users << ',' << seeds << ',' << c.budget.search_calls << ','
        << c.budget.post_calls << ',' << c.budget.neighbor_calls << ',' << error << '\n';
  }
}

void write_report_text(std::ostream& out, const SuccessReport& report) {
  std::vector<anon::StructMethod> rows;
  std::vector<anon::TextMethod> texts;
  std::vector<attack::Metric> metrics;
  for (const auto& c : report.cells) {
    if (std::find(rows.begin(), rows.end(), c.structural) == rows.end()) rows.push_back(c.structural);
    if (std::find(texts.begin(), texts.end(), c.textual) == texts.end()) texts.push_back(c.textual);
    if (std::find(metrics.begin(), metrics.end(), c.metric) == metrics.end()) metrics.push_back(c.metric);
  }
  constexpr int kFirst = 16;
  constexpr int kCell = 12;
  out << "Success rate by structural (rows) and textual (columns) anonymization;\n"
         "case number in parentheses, '!' marks cells with failed repetitions.\n\n";
  out << std::left << std::setw(kFirst) << "";
  for (auto m : metrics) {
    out << "| " << std::setw(kCell * static_cast<int>(texts.size())) << attack::to_string(m);
  }
  out << "\n" << std::setw(kFirst) << "structural";
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    out << "| ";
    for (auto t : texts) out << std::setw(kCell) << anon::to_string(t);
  }
  out << "\n";
  for (auto s : rows) {
    out << std::setw(kFirst) << anon::to_string(s);
    for (auto m : metrics) {
      out << "| ";
      for (auto t : texts) {
        const CellResult* c = report.find(s, t, m);
        std::string cell = "-";
        if (c) {
          cell = fixed4(c->mean) + " (" + std::to_string(c->case_label) + ")";
          if (!c->error.empty()) cell += "!";
        }
        out << std::setw(kCell) << cell;
      }
    }
    out << "\n";
  }
}

}  // namespace hetanon::eval

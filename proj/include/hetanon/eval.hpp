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
// Experiment matrix: every structural x textual anonymization pair attacked
// with every metric, repeated with derived seeds, summarized as success rates.

#ifndef HETANON_EVAL_HPP_
#define HETANON_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hetanon/anon_struct.hpp"
#include "hetanon/anon_text.hpp"
#include "hetanon/attack.hpp"
#include "hetanon/target.hpp"
#include "hetanon/types.hpp"

namespace hetanon::eval {

struct ExperimentPlan {
  std::vector<anon::StructMethod> structural = anon::all_struct_methods();
  std::vector<anon::TextMethod> textual = anon::all_text_methods();
  std::vector<attack::Metric> metrics = attack::all_metrics();
  std::size_t repetitions = 5;
  std::uint64_t base_seed = 1;
  attack::AttackConfig attack;
  double p = 0.1;
  std::size_t k_anon = 10;
  double epsilon = 0.01;
  target::MatchMode match_mode = target::MatchMode::any_word;
  // Anonymization cells run concurrently on this many threads.
  std::size_t jobs = 1;

  void validate() const;
};

// key = value lines; '#' starts a comment. Lists are comma-separated.
// Throws ParseError or ConfigError.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan load_plan(const std::filesystem::path& path);

// 1 neither aspect anonymized, 2 text only, 3 structure only, 4 both.
int case_label(anon::StructMethod s, anon::TextMethod t);

using Mapping = std::vector<std::pair<UserId, std::vector<UserId>>>;

// Share of users whose true identity is among their first h candidates.
double success_rate(const Mapping& mapping, const GroundTruth& truth, std::size_t h);
double success_rate(const attack::AttackResult& result, const GroundTruth& truth, std::size_t h);

struct CellResult {
  anon::StructMethod structural = anon::StructMethod::naive;
  anon::TextMethod textual = anon::TextMethod::naive;
  attack::Metric metric = attack::Metric::improved;
  int case_label = 1;
  std::vector<double> rates;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n_users = 0;
  std::vector<std::uint64_t> seeds;
  target::BudgetTotals budget;
  // Failures of individual repetitions; empty when all succeeded.
  std::string error;
};

struct SuccessReport {
  std::vector<CellResult> cells;
  const CellResult* find(anon::StructMethod s, anon::TextMethod t, attack::Metric m) const;
};

// Anonymization seed of one repetition of one cell.
std::uint64_t cell_seed(std::uint64_t base, std::size_t rep, anon::StructMethod s,
                        anon::TextMethod t);

using Progress = std::function<void(const std::string&)>;

SuccessReport run_matrix(const ExperimentPlan& plan, const SocialNetwork& network,
                         const Progress& progress = {});

void write_report_csv(std::ostream& out, const SuccessReport& report);
void write_report_text(std::ostream& out, const SuccessReport& report);

}  // namespace hetanon::eval

#endif  // HETANON_EVAL_HPP_

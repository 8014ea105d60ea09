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
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "hetanon/eval.hpp"

using namespace hetanon;
using namespace hetanon::eval;
using anon::StructMethod;
using anon::TextMethod;
using attack::Metric;

namespace {

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::string csv_of(const SuccessReport& r) {
  std::ostringstream out;
  write_report_csv(out, r);
  return out.str();
}

GroundTruth ten_truth() {
  std::vector<std::pair<UserId, UserId>> pairs;
  for (std::uint64_t i = 0; i < 10; ++i) pairs.emplace_back(UserId{100 + i}, UserId{i});
  return GroundTruth(pairs);
}

}  // namespace

TEST_CASE("success rate examples") {
  const auto truth = ten_truth();
  Mapping all_right, all_empty, seven;
  for (std::uint64_t i = 0; i < 10; ++i) {
    all_right.push_back({UserId{100 + i}, {UserId{i}, UserId{(i + 1) % 10}}});
    all_empty.push_back({UserId{100 + i}, {}});
    // Users 0..6 are hits; 7 and 8 are wrong; 9 has the truth only at rank 2.
    std::vector<UserId> ranked;
    if (i < 7) ranked = {UserId{i}};
    if (i == 7 || i == 8) ranked = {UserId{0}};
    if (i == 9) ranked = {UserId{3}, UserId{9}};
    seven.push_back({UserId{100 + i}, ranked});
  }
  CHECK(success_rate(all_right, truth, 1) == 1.0);
  CHECK(success_rate(all_empty, truth, 1) == 0.0);
  CHECK(success_rate(seven, truth, 1) == doctest::Approx(0.7));
  CHECK(success_rate(seven, truth, 2) == doctest::Approx(0.8));
  CHECK(success_rate(Mapping{}, truth, 1) == 0.0);
}

TEST_CASE("success rate never drops as h grows") {
  const auto truth = ten_truth();
  Mapping m;
  for (std::uint64_t i = 0; i < 10; ++i) {
    std::vector<UserId> ranked;
    for (std::uint64_t j = 0; j < 5; ++j) ranked.push_back(UserId{(i * 3 + j * 7) % 10});
    m.push_back({UserId{100 + i}, ranked});
  }
  double last = 0.0;
  for (std::size_t h = 0; h <= 6; ++h) {
    const double r = success_rate(m, truth, h);
    CHECK(r >= last);
    last = r;
  }
}

TEST_CASE("case labels for every combination") {
  for (StructMethod s : anon::all_struct_methods()) {
    for (TextMethod t : anon::all_text_methods()) {
      const bool structure = s != StructMethod::naive;
      const bool text = t == TextMethod::dp;
      const int want = !structure && !text ? 1 : !structure ? 2 : !text ? 3 : 4;
      CHECK(case_label(s, t) == want);
    }
  }
}

TEST_CASE("single cell plan") {
  auto g = fixtures::generated(80, 3);
  ExperimentPlan plan;
  plan.structural = {StructMethod::naive};
  plan.textual = {TextMethod::naive};
  plan.metrics = {Metric::improved};
  plan.repetitions = 1;
  auto report = run_matrix(plan, g.network);
  REQUIRE(report.cells.size() == 1);
  const auto& c = report.cells[0];
  CHECK(c.case_label == 1);
  CHECK(c.rates.size() == 1);
  CHECK(c.mean == c.rates[0]);
  CHECK(c.stddev == 0.0);
  CHECK(c.n_users == 80);
  CHECK(c.error.empty());
  CHECK(c.budget.search_calls > 0);
  CHECK(report.find(StructMethod::naive, TextMethod::naive, Metric::improved) == &c);
  CHECK(report.find(StructMethod::naive, TextMethod::dp, Metric::improved) == nullptr);
  CHECK(count_lines(csv_of(report)) == 2);
}

TEST_CASE("full plan on 200 users") {
  auto g = fixtures::generated(200, 4);
  ExperimentPlan plan;
  plan.repetitions = 1;
  plan.jobs = 2;
  auto report = run_matrix(plan, g.network);
  CHECK(report.cells.size() == 48);
  for (const auto& c : report.cells) {
    CHECK(c.mean >= 0.0);
    CHECK(c.mean <= 1.0);
    CHECK(c.error.empty());
    CHECK(c.case_label == case_label(c.structural, c.textual));
  }
  std::string csv = csv_of(report);
  CHECK(count_lines(csv) == 49);
  std::ostringstream text;
  write_report_text(text, report);
  for (StructMethod s : anon::all_struct_methods()) {
    CHECK(text.str().find(std::string(anon::to_string(s))) != std::string::npos);
  }
  plan.jobs = 1;
  CHECK(csv_of(run_matrix(plan, g.network)) == csv);
}

TEST_CASE("repeated runs are identical and stddev uses repetitions") {
  auto g = fixtures::generated(60, 9);
  ExperimentPlan plan;
  plan.structural = {StructMethod::naive, StructMethod::perturbation};
  plan.textual = {TextMethod::naive};
  plan.metrics = {Metric::simple, Metric::narayanan};
  plan.repetitions = 3;
  auto a = run_matrix(plan, g.network);
  auto b = run_matrix(plan, g.network);
  CHECK(csv_of(a) == csv_of(b));
  for (const auto& c : a.cells) {
    REQUIRE(c.rates.size() == 3);
    double mean = (c.rates[0] + c.rates[1] + c.rates[2]) / 3;
    double var = 0;
    for (double r : c.rates) var += (r - mean) * (r - mean);
    CHECK(c.mean == doctest::Approx(mean));
    CHECK(c.stddev == doctest::Approx(std::sqrt(var / 2)));
    CHECK(c.seeds.size() == 3);
  }
  plan.base_seed = 2;
  CHECK(csv_of(run_matrix(plan, g.network)) != csv_of(a));
}

TEST_CASE("cell seeds differ across cells and repetitions") {
  std::set<std::uint64_t> seen;
  for (std::size_t rep = 0; rep < 5; ++rep) {
    for (StructMethod s : anon::all_struct_methods()) {
      for (TextMethod t : anon::all_text_methods()) seen.insert(cell_seed(1, rep, s, t));
    }
  }
  CHECK(seen.size() == 60);
}

TEST_CASE("failing cells are recorded and the run continues") {
  // k larger than the user count cannot be met.
  auto g = fixtures::generated(30, 2);
  ExperimentPlan plan;
  plan.structural = {StructMethod::kdeg_add, StructMethod::naive};
  plan.textual = {TextMethod::naive};
  plan.metrics = {Metric::simple};
  plan.repetitions = 1;
  plan.k_anon = 50;
  auto report = run_matrix(plan, g.network);
  REQUIRE(report.cells.size() == 2);
  const auto* bad = report.find(StructMethod::kdeg_add, TextMethod::naive, Metric::simple);
  const auto* good = report.find(StructMethod::naive, TextMethod::naive, Metric::simple);
  CHECK_FALSE(bad->error.empty());
  CHECK(good->error.empty());
  CHECK(good->mean > 0.0);
  std::ostringstream text;
  write_report_text(text, report);
  CHECK(text.str().find("!") != std::string::npos);
}

TEST_CASE("report rendering") {
  SuccessReport empty;
  CHECK(csv_of(empty) ==
        "structural,textual,metric,mean_X,std_X,case,n_users,seeds,search_calls,post_calls,"
        "neighbor_calls,error\n");
  SuccessReport one;
  CellResult c;
  c.structural = StructMethod::switching;
  c.textual = TextMethod::dp;
  c.metric = Metric::ada;
  c.case_label = 4;
  c.rates = {0.25, 0.75};
  c.mean = 0.5;
  c.stddev = 0.25;
  c.n_users = 10;
  c.seeds = {7, 8};
  c.budget = {3, 2, 1};
  one.cells.push_back(c);
  const std::string csv = csv_of(one);
  CHECK(count_lines(csv) == 2);
  CHECK(csv.substr(csv.find('\n') + 1) == "switching,dp,ada,0.500000,0.250000,4,10,7;8,3,2,1,\n");
  std::ostringstream text;
  write_report_text(text, one);
  CHECK(text.str().find("0.5000 (4)") != std::string::npos);
}

TEST_CASE("plan files") {
  std::istringstream in(
      "# experiment\n"
      "structural = naive, switching\n"
      "textual = dp\n"
      "metrics = improved,ada\n"
      "repetitions = 2\n"
      "seed = 9\n"
      "p = 0.2\n"
      "k_anon = 5\n"
      "epsilon = 0.5\n"
      "match = any\n"
      "jobs = 3\n"
      "lambda = 4\n");
  auto plan = parse_plan(in);
  CHECK(plan.structural == std::vector<StructMethod>{StructMethod::naive, StructMethod::switching});
  CHECK(plan.textual == std::vector<TextMethod>{TextMethod::dp});
  CHECK(plan.metrics == std::vector<Metric>{Metric::improved, Metric::ada});
  CHECK(plan.repetitions == 2);
  CHECK(plan.base_seed == 9);
  CHECK(plan.p == 0.2);
  CHECK(plan.k_anon == 5);
  CHECK(plan.epsilon == 0.5);
  CHECK(plan.match_mode == target::MatchMode::any_word);
  CHECK(plan.jobs == 3);
  CHECK(plan.attack.lambda == 4);

  std::istringstream unknown("repetitions = 2\nflavour = mint\n");
  try {
    parse_plan(unknown);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream bad_number("p = lots\n");
  CHECK_THROWS_AS(parse_plan(bad_number), ParseError);
  std::istringstream bad_method("structural = blur\n");
  CHECK_THROWS_AS(parse_plan(bad_method), Error);
  std::istringstream zero_reps("repetitions = 0\n");
  CHECK_THROWS_AS(parse_plan(zero_reps), ConfigError);
}

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
#include "hetanon/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "hetanon/common.hpp"

namespace hetanon::config {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

datagen::Range as_range(const KeyValue& kv) {
  auto parts = as_list(kv);
  if (parts.size() != 2) throw ParseError(kv.line, kv.key + ": expected 'min, max'");
  KeyValue lo{kv.line, kv.key, parts[0]};
  KeyValue hi{kv.line, kv.key, parts[1]};
  return datagen::Range{as_count(lo), as_count(hi)};
}

}  // namespace

std::vector<KeyValue> read_key_values(std::istream& in) {
  std::vector<KeyValue> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key = value");
    KeyValue kv{line, trim(std::string_view(text).substr(0, eq)),
                trim(std::string_view(text).substr(eq + 1))};
    if (kv.key.empty()) throw ParseError(line, "empty key");
    out.push_back(std::move(kv));
  }
  return out;
}

std::vector<KeyValue> load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_key_values(in);
}

std::size_t as_count(const KeyValue& kv) {
  std::size_t x = 0;
  const char* end = kv.value.data() + kv.value.size();
  auto [ptr, ec] = std::from_chars(kv.value.data(), end, x);
  if (kv.value.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(kv.line, kv.key + ": expected a non-negative integer, got '" + kv.value + "'");
  }
  return x;
}

double as_number(const KeyValue& kv) {
  double x = 0;
  const char* end = kv.value.data() + kv.value.size();
  auto [ptr, ec] = std::from_chars(kv.value.data(), end, x);
  if (kv.value.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(kv.line, kv.key + ": expected a number, got '" + kv.value + "'");
  }
  return x;
}

std::vector<std::string> as_list(const KeyValue& kv) {
  std::vector<std::string> out;
  std::stringstream ss(kv.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool apply(datagen::GenConfig& cfg, const KeyValue& kv) {
  const std::string& k = kv.key;
  if (k == "users") cfg.n_users = as_count(kv);
  else if (k == "attach") cfg.m_attach = as_count(kv);
  else if (k == "topics") cfg.n_topics = as_count(kv);
  else if (k == "vocab_size") cfg.vocab_size = as_count(kv);
  else if (k == "posts_per_user") cfg.posts_per_user = as_range(kv);
  else if (k == "words_per_post") cfg.words_per_post = as_range(kv);
  else if (k == "topic_concentration") cfg.topic_mix_concentration = as_number(kv);
  else if (k == "homophily") cfg.homophily_strength = as_number(kv);
  else if (k == "reciprocity") cfg.reciprocity = as_number(kv);
  else if (k == "signature_rate") cfg.signature_rate = as_number(kv);
  else if (k == "signature_words") cfg.signature_words = as_count(kv);
  else if (k == "pii_rate") cfg.pii_rate = as_number(kv);
  else if (k == "seed") cfg.rng_seed = as_count(kv);
  else return false;
  return true;
}

bool apply(attack::AttackConfig& cfg, const KeyValue& kv) {
  const std::string& k = kv.key;
  if (k == "k_posts") cfg.k_posts = as_count(kv);
  else if (k == "alpha") cfg.alpha = as_number(kv);
  else if (k == "beta") cfg.beta = as_number(kv);
  else if (k == "lambda") cfg.lambda = as_count(kv);
  else if (k == "theta") cfg.theta = as_count(kv);
  else if (k == "bins") cfg.bins = as_count(kv);
  else if (k == "bin_width") cfg.bin_width = as_count(kv);
  else if (k == "top_h") cfg.top_h = as_count(kv);
  else if (k == "seed_users") cfg.seed_count = as_count(kv);
  else if (k == "search_limit") cfg.search_limit = as_count(kv);
  else if (k == "attack_seed") cfg.rng_seed = as_count(kv);
  else if (k == "jobs") cfg.jobs = as_count(kv);
  else return false;
  return true;
}

datagen::GenConfig parse_gen_config(const std::vector<KeyValue>& entries) {
  datagen::GenConfig cfg;
  for (const auto& kv : entries) {
    if (!apply(cfg, kv)) throw ParseError(kv.line, "unknown key '" + kv.key + "'");
  }
  return cfg;
}

attack::AttackConfig parse_attack_config(const std::vector<KeyValue>& entries) {
  attack::AttackConfig cfg;
  for (const auto& kv : entries) {
    if (!apply(cfg, kv)) throw ParseError(kv.line, "unknown key '" + kv.key + "'");
  }
  return cfg;
}

}  // namespace hetanon::config

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
// key = value configuration files.

#ifndef HETANON_CONFIG_HPP_
#define HETANON_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hetanon/attack.hpp"
#include "hetanon/datagen.hpp"

namespace hetanon::config {

struct KeyValue {
  std::size_t line = 0;
  std::string key;
  std::string value;
};

// One entry per non-blank line; '#' starts a comment. Throws ParseError.
std::vector<KeyValue> read_key_values(std::istream& in);
std::vector<KeyValue> load_key_values(const std::filesystem::path& path);

// Throw ParseError naming the line and key.
std::size_t as_count(const KeyValue& kv);
double as_number(const KeyValue& kv);
std::vector<std::string> as_list(const KeyValue& kv);

// Return false when the key is not one of the struct's fields.
bool apply(datagen::GenConfig& cfg, const KeyValue& kv);
bool apply(attack::AttackConfig& cfg, const KeyValue& kv);

// Every key must be known. Throws ParseError.
datagen::GenConfig parse_gen_config(const std::vector<KeyValue>& entries);
attack::AttackConfig parse_attack_config(const std::vector<KeyValue>& entries);

}  // namespace hetanon::config

#endif  // HETANON_CONFIG_HPP_

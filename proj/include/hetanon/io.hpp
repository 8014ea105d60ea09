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

// Line-oriented text formats for networks, released datasets and sidecars.
// The grammar is documented in docs/file-formats.md. Reals are written in the
// shortest form that parses back to the identical double.

#ifndef HETANON_IO_HPP_
#define HETANON_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "hetanon/types.hpp"

namespace hetanon::io {

void write_dataset(std::ostream& out, const AnonymizedDataset& d);
// Throws ParseError naming the offending line.
AnonymizedDataset read_dataset(std::istream& in);
void save_dataset(const AnonymizedDataset& d, const std::filesystem::path& path);
AnonymizedDataset load_dataset(const std::filesystem::path& path);

void write_network(std::ostream& out, const SocialNetwork& n);
// Post tokens are rebuilt from the raw text with the network's handles as
// the PII name dictionary.
SocialNetwork read_network(std::istream& in);
void save_network(const SocialNetwork& n, const std::filesystem::path& path);
SocialNetwork load_network(const std::filesystem::path& path);

void write_truth(std::ostream& out, const GroundTruth& t);
GroundTruth read_truth(std::istream& in);
void save_truth(const GroundTruth& t, const std::filesystem::path& path);
GroundTruth load_truth(const std::filesystem::path& path);

// Per-user topic labels written by the generator (diagnostics only).
void save_topics(const std::vector<std::pair<UserId, std::uint32_t>>& topics,
                 const std::filesystem::path& path);
std::vector<std::pair<UserId, std::uint32_t>> load_topics(const std::filesystem::path& path);

// Sidecar naming convention: "<path>.truth", "<path>.topics".
std::filesystem::path truth_path(const std::filesystem::path& dataset);
std::filesystem::path topics_path(const std::filesystem::path& network);

// Shortest round-trip decimal form of a double.
std::string format_real(double x);

}  // namespace hetanon::io

#endif  // HETANON_IO_HPP_

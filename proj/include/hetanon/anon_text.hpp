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
// Textual anonymization of the post-word matrix and assembly of releases.

#ifndef HETANON_ANON_TEXT_HPP_
#define HETANON_ANON_TEXT_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetanon/anon_struct.hpp"
#include "hetanon/common.hpp"
#include "hetanon/text.hpp"
#include "hetanon/types.hpp"

namespace hetanon::anon {

enum class TextMethod { naive, dp };

std::string_view to_string(TextMethod m);
TextMethod parse_text_method(std::string_view name);
const std::vector<TextMethod>& all_text_methods();

struct DPConfig {
  double epsilon = 0.01;
  std::uint64_t rng_seed = 1;
  std::optional<double> sensitivity_override;
  void validate() const;
};

// Maximum L1 distance between any two rows. Throws Error with < 2 rows.
double sensitivity(const PostWordMatrix& x);

// Zero-mean Laplace draw for a uniform u in (-0.5, 0.5).
double laplace_from_uniform(double u, double scale);
double laplace_sample(double scale, Rng& rng);

// Adds i.i.d. Laplace(0, sensitivity/epsilon) noise to every entry, zeros
// included. The result is dense. Row r draws from a stream derived from
// (rng_seed, r).
PostWordMatrix dp_anonymize(const PostWordMatrix& x, const DPConfig& config);

struct TextRelease {
  PostWordMatrix post_word;
  Vocabulary vocab;
  std::vector<std::uint32_t> doc_freq;
};

// Removes PII and stopwords from each raw post, then TF-IDF. No noise.
TextRelease naive_text_anonymize(std::span<const std::string> raw_posts,
                                 const text::WordSet& names = {});

// Release with pseudonymized users and edges and naive text. Users are listed
// by ascending pseudonym, and each user's posts keep their recency order.
AnonymizedDataset assemble_release(const SocialNetwork& network, const StructuralRelease& s);

// Replaces the dataset's post-word matrix according to the method. naive is
// a pass-through.
void apply_text_method(AnonymizedDataset& dataset, TextMethod method, const DPConfig& config);

}  // namespace hetanon::anon

#endif  // HETANON_ANON_TEXT_HPP_

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
#ifndef HETANON_CLI_HPP_
#define HETANON_CLI_HPP_

#include <iosfwd>

namespace hetanon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "HETANON_OUT_DIR";

// Parses argv and runs one subcommand: datagen, anonymize, anonymize-text,
// query, attack or evaluate. Returns the process exit code.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hetanon::cli

#endif  // HETANON_CLI_HPP_

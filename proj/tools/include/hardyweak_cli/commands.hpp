// Copyright 2026 The hardyweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// The hardyweak command-line front end. run_cli is separated from main() so
// tests can drive it with string streams.

#ifndef HARDYWEAK_CLI_COMMANDS_HPP
#define HARDYWEAK_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hardyweak::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitInternal = 1;

/// `args` excludes the program name. The report goes to `out`, diagnostics
/// and usage text to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardyweak::cli

#endif  // HARDYWEAK_CLI_COMMANDS_HPP

// Copyright 2026 The glyphkit Authors
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

// Command-line front end. Exit codes:
//   0  success
//   1  I/O failure (unreadable input, unwritable output)
//   2  invalid instructions, invalid options, or validation errors
//   3  malformed input data (schema errors, dimension mismatches); the
//      message names the offending file

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace glyphkit {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitInvalid = 2,
  kExitMalformed = 3,
};

/// Runs the CLI on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace glyphkit

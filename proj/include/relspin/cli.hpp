// Copyright 2026 The relspin Authors
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

#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace relspin::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kDegenerate = 3,
    kNotConverged = 4,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream &out, std::ostream &err);

/// Fixed notation with `decimals` digits after the point; -0 prints as 0.
std::string format_fixed(double value, int decimals);

/// Shortest representation rounded to at most `digits` significant digits.
std::string format_significant(double value, int digits);

}  // namespace relspin::cli

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

#include <string>
#include <vector>

namespace relspin {

struct CheckSuite {
    std::string name;
    long cases = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Property sweeps over the correlation law, the spin spectrum, the
/// component algebra and the n-parity symmetry. Deterministic.
std::vector<CheckSuite> run_self_check();

}  // namespace relspin

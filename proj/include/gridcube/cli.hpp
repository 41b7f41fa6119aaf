// Copyright 2026 The gridcube Authors
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

#include "gridcube/grid.hpp"

namespace gridcube {

// Process exit codes; stable across subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitParse = 3,
  kExitResolution = 4,
  kExitBounds = 5,
  kExitValidation = 6,
  kExitConfig = 7,
  kExitIntegrity = 8,
  kExitIo = 9,
};

int exit_code(ErrorKind kind) noexcept;

// Whole command line, argv[0] included. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gridcube

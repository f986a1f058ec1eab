/*
 * Copyright 2026 The sonarmap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SONARMAP_CLI_HPP_
#define SONARMAP_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace sonarmap {

// Process exit codes; a stable contract for scripts.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitUsage = 1,
  kExitDataError = 2,
  kExitIoError = 3,
};

// Runs the command line `args` (without the program name). Subcommands:
// simulate, addnoise, filter, map, eval, sweep, bench. Global flags:
// --config, --seed, --out-dir, --plot.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace sonarmap

#endif  // SONARMAP_CLI_HPP_

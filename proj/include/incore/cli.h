// Copyright 2026 The incore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INCORE_CLI_H_
#define INCORE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "incore/machine_model.h"

namespace incore {

// Directories searched for bundled models: entries of $INCORE_MODEL_PATH
// (colon separated), then the installed data directory.
std::vector<std::string> ModelSearchPath();

// Names of the *.yml models found on the search path, sorted.
std::vector<std::string> BundledModels();

// `arch` is a model file path or the name of a bundled model.
MachineModel ResolveModel(const std::string& arch);

// Subcommands: analyze, bench-gen, db-import, models. `args` excludes the
// program name. Returns the process exit status.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace incore

#endif  // INCORE_CLI_H_

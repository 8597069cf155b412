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

#ifndef INCORE_TESTS_TEST_SUPPORT_H_
#define INCORE_TESTS_TEST_SUPPORT_H_

#include <string>
#include <string_view>

#include "incore/cycles.h"
#include "incore/instruction.h"
#include "incore/machine_model.h"
#include "incore/parser.h"

namespace incore::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(INCORE_TEST_DATA_DIR) + "/" + name;
}

inline std::string ModelPath(const std::string& name) {
  return std::string(INCORE_TEST_MODEL_DIR) + "/" + name + ".yml";
}

inline const MachineModel& BundledModel(const std::string& name) {
  static const MachineModel tx2 = LoadModel(ModelPath("tx2"));
  static const MachineModel clx = LoadModel(ModelPath("clx"));
  static const MachineModel zen = LoadModel(ModelPath("zen"));
  if (name == "tx2") return tx2;
  if (name == "clx") return clx;
  return zen;
}

// Every line of `text` becomes part of the kernel.
inline Kernel KernelFromText(std::string_view text, Isa isa) {
  Kernel kernel;
  kernel.isa = isa;
  kernel.forms = ParseFile(text, isa);
  return kernel;
}

inline Kernel MarkedKernel(const std::string& file, Isa isa) {
  const auto forms = ParseFile(ReadTextFile(DataPath(file)), isa);
  return FindMarkers(forms, isa);
}

inline Cycles Cy(std::string_view text) { return ParseCycles(text); }

}  // namespace incore::testing

#endif  // INCORE_TESTS_TEST_SUPPORT_H_

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

#ifndef INCORE_THROUGHPUT_H_
#define INCORE_THROUGHPUT_H_

#include <string>
#include <vector>

#include "incore/cycles.h"
#include "incore/instruction.h"
#include "incore/machine_model.h"
#include "incore/resolve.h"

namespace incore {

// Cycles per port, in the port order of the machine model.
struct PortPressureVector {
  std::vector<std::string> ports;
  std::vector<Cycles> cycles;

  static PortPressureVector Zero(const std::vector<std::string>& ports);

  // Spreads each item evenly over its port group. Throws on unknown ports.
  void Add(const PortPressureList& pressure);
  PortPressureVector& operator+=(const PortPressureVector& other);
  Cycles at(const std::string& port) const;
  Cycles Max() const;

  bool operator==(const PortPressureVector&) const = default;
};

struct KernelPressure {
  // One vector per resolved form, instructions and non-instructions alike.
  std::vector<PortPressureVector> per_line;
  PortPressureVector total;
};

KernelPressure ComputeKernelPressure(const std::vector<ResolvedForm>& forms,
                                     const MachineModel& model);
KernelPressure ComputeKernelPressure(const Kernel& kernel, const MachineModel& model);

// Maximum port load divided by the unroll factor.
Cycles ThroughputBound(const PortPressureVector& total, int unroll);

}  // namespace incore

#endif  // INCORE_THROUGHPUT_H_

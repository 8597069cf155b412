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

#include "incore/throughput.h"

#include <algorithm>

namespace incore {

PortPressureVector PortPressureVector::Zero(const std::vector<std::string>& ports) {
  return {ports, std::vector<Cycles>(ports.size(), Cycles(0))};
}

void PortPressureVector::Add(const PortPressureList& pressure) {
  for (const auto& item : pressure) {
    const Cycles share = item.cycles / static_cast<std::int64_t>(item.ports.size());
    for (const auto& port : item.ports) {
      auto it = std::find(ports.begin(), ports.end(), port);
      if (it == ports.end()) throw Error("unknown port '" + port + "'");
      cycles[it - ports.begin()] += share;
    }
  }
}

PortPressureVector& PortPressureVector::operator+=(const PortPressureVector& other) {
  if (other.ports != ports) throw Error("port layouts differ");
  for (std::size_t i = 0; i < cycles.size(); ++i) cycles[i] += other.cycles[i];
  return *this;
}

Cycles PortPressureVector::at(const std::string& port) const {
  auto it = std::find(ports.begin(), ports.end(), port);
  if (it == ports.end()) throw Error("unknown port '" + port + "'");
  return cycles[it - ports.begin()];
}

Cycles PortPressureVector::Max() const {
  Cycles best(0);
  for (const auto& c : cycles) best = std::max(best, c);
  return best;
}

KernelPressure ComputeKernelPressure(const std::vector<ResolvedForm>& forms,
                                     const MachineModel& model) {
  KernelPressure out;
  out.total = PortPressureVector::Zero(model.ports);
  for (const auto& form : forms) {
    auto line = PortPressureVector::Zero(model.ports);
    line.Add(form.pressure);
    out.total += line;
    out.per_line.push_back(std::move(line));
  }
  return out;
}

KernelPressure ComputeKernelPressure(const Kernel& kernel, const MachineModel& model) {
  return ComputeKernelPressure(ResolveKernel(kernel, model), model);
}

Cycles ThroughputBound(const PortPressureVector& total, int unroll) {
  if (unroll < 1) throw Error("unroll factor must be at least 1");
  return total.Max() / static_cast<std::int64_t>(unroll);
}

}  // namespace incore

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

#ifndef INCORE_CYCLES_H_
#define INCORE_CYCLES_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace incore {

// Exact cycle counts. Port shares such as 1/3 cy accumulate without drift.
using Cycles = boost::rational<std::int64_t>;

// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts integers ("6"), decimals ("0.5", "-24") and fractions ("1/3").
Cycles ParseCycles(std::string_view text);

// Canonical lossless text: a terminating decimal when one exists, otherwise
// "n/d". ParseCycles(FormatCycles(c)) == c.
std::string FormatCycles(Cycles value);

// Rounds half away from zero to `decimals` places.
std::string FormatFixed(Cycles value, int decimals);

// Latency rendering: two decimals with one trailing zero dropped, so 18 is
// "18.0", 11.5 is "11.5" and 14.75 stays "14.75".
std::string FormatLatency(Cycles value);

inline double ToDouble(Cycles value) {
  return boost::rational_cast<double>(value);
}

}  // namespace incore

#endif  // INCORE_CYCLES_H_

// Copyright 2026 The Stylecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stylecomp/rng.h"

#include <cmath>

namespace stylecomp {

std::uint64_t Rng::Poisson(double mean) {
  if (mean <= 0.0) return 0;
  // Split large means into chunks to keep exp(-mean) representable.
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = mean > 30.0 ? 30.0 : mean;
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double product = Uniform();
    while (product > limit) {
      ++total;
      product *= Uniform();
    }
  }
  return total;
}

}  // namespace stylecomp

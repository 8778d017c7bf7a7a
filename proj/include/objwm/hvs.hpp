// Copyright 2026 the objwm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OBJWM_HVS_HPP
#define OBJWM_HVS_HPP

#include <vector>

#include "objwm/sadwt.hpp"

namespace objwm {

// Per-block visual activity. brightness is the mean of the full
// coefficient values, texture their population variance, vm the activity
// value brightness * texture^beta, and t the +/-1 high/low classifier
// output against the list-average threshold Tc.
struct BlockActivity {
    int k = 0;
    double brightness = 0.0;
    double texture = 0.0;
    double vm = 0.0;
    int t = 0;
};

// texture^beta is defined as 0 when texture == 0.
BlockActivity block_activity(const CoeffGrid& grid, const WaveletBlock& block,
                             double beta);

// Fills t = sign(vm - Tc) with sign(0) = +1 and returns Tc, the mean of vm
// over the list. The list must be non-empty. Summation runs in list order
// so the result does not depend on scheduling.
double classify(std::vector<BlockActivity>& activities);

}  // namespace objwm

#endif  // OBJWM_HVS_HPP

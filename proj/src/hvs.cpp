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

#include "objwm/hvs.hpp"

#include <cmath>
#include <stdexcept>

namespace objwm {

BlockActivity block_activity(const CoeffGrid& grid, const WaveletBlock& block,
                             double beta) {
    const int n2 = block.side * block.side;
    long long sum = 0;
    for (int dr = 0; dr < block.side; ++dr)
        for (int dc = 0; dc < block.side; ++dc)
            sum += grid.at(block.row + dr, block.col + dc);
    const double brightness = static_cast<double>(sum) / n2;

    double var = 0.0;
    for (int dr = 0; dr < block.side; ++dr)
        for (int dc = 0; dc < block.side; ++dc) {
            const double diff = brightness - grid.at(block.row + dr, block.col + dc);
            var += diff * diff;
        }
    var /= n2;

    BlockActivity act;
    act.k = block.index;
    act.brightness = brightness;
    act.texture = var;
    act.vm = var == 0.0 ? 0.0 : brightness * std::pow(var, beta);
    return act;
}

double classify(std::vector<BlockActivity>& activities) {
    if (activities.empty())
        throw std::invalid_argument("classify: empty activity list");
    double sum = 0.0;
    for (const auto& a : activities) sum += a.vm;
    const double tc = sum / static_cast<double>(activities.size());
    for (auto& a : activities) a.t = a.vm - tc >= 0.0 ? 1 : -1;
    return tc;
}

}  // namespace objwm

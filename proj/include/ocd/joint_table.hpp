#pragma once

#include <cstddef>
#include <vector>

namespace ocd {

// Probability table over the product of category sets, row-major over
// `shape` (first variable slowest).
struct JointTable {
    std::vector<int> shape;
    std::vector<double> probs;

    std::size_t cells() const {
        std::size_t n = 1;
        for (int s : shape) n *= static_cast<std::size_t>(s);
        return n;
    }
};

}  // namespace ocd

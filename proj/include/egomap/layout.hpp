#pragma once

#include <array>
#include <cstdint>
#include <map>

#include "egomap/egonet.hpp"

namespace egomap {

// Spring-embedder layout, normalized to the unit square. Deterministic in
// (graph, seed, iterations): seeded initial placement, fixed cooling
// schedule, force accumulation in sorted node order.
struct LayoutResult {
    std::map<AccountId, std::array<double, 2>> positions;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
};

LayoutResult layout(const UndirectedFollowGraph& g, std::uint64_t seed,
                    std::size_t iterations);

}  // namespace egomap

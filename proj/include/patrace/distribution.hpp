#pragma once

#include "patrace/rational.hpp"

#include <cstddef>
#include <vector>

namespace patrace {

struct DistributionRow {
    std::vector<Rational> per_pattern;  // Pr(τ = τ_k = n)
    Rational total;                     // Pr(τ = n)

    friend bool operator==(const DistributionRow&, const DistributionRow&) = default;
};

/// Exact per-step stopping distribution for n = 0..horizon.
struct DistributionTable {
    std::size_t horizon = 0;
    std::vector<DistributionRow> rows;
    Rational tail_mass;  // Pr(τ > horizon)

    friend bool operator==(const DistributionTable&, const DistributionTable&) = default;
};

using SeriesTable = DistributionTable;

}  // namespace patrace

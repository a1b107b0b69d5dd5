#pragma once

#include <optional>

#include "nwaq/automaton.hpp"

namespace nwaq {

struct WidthResult {
    bool holds = true;
    /// Shortest, then lexicographically least, word opening a (k+1)-th slot.
    std::optional<Word> witness;
};

WidthResult has_width(const Nwa& nwa, std::size_t k);

/// Smallest k ≤ k_max with has_width(nwa, k), or nullopt.
std::optional<std::size_t> minimal_width(const Nwa& nwa, std::size_t k_max);

}  // namespace nwaq

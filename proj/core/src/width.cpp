#include "nwaq/width.hpp"

#include "nwaq/determinize.hpp"

namespace nwaq {

WidthResult has_width(const Nwa& nwa, std::size_t k) {
    if (k == 0) throw PreconditionError("width bound must be positive");
    const ConfigGraph g = explore_configurations(exploration_view(nwa), k);
    if (!g.overflow_witness) return {};
    return {false, g.overflow_witness};
}

std::optional<std::size_t> minimal_width(const Nwa& nwa, std::size_t k_max) {
    for (std::size_t k = 1; k <= k_max; ++k)
        if (has_width(nwa, k).holds) return k;
    return std::nullopt;
}

}  // namespace nwaq

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nwaq/automaton.hpp"

namespace nwaq {

struct Slot {
    std::uint32_t slave = 0;
    State state = 0;

    auto operator<=>(const Slot&) const = default;
};

/// Master state plus the active slaves, least recently invoked first.
/// The capacity bound is carried by the caller.
struct Configuration {
    State master = 0;
    std::vector<Slot> slots;

    auto operator<=>(const Configuration&) const = default;
    bool operator==(const Configuration&) const = default;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const noexcept {
        std::size_t h = std::hash<std::uint32_t>{}(c.master);
        for (const auto& s : c.slots) {
            h ^= (static_cast<std::size_t>(s.slave) * 0x9e3779b97f4a7c15ULL + s.state) + 0x9e3779b9 + (h << 6) + (h >> 2);
        }
        return h;
    }
};

std::string format_configuration(const Nwa& nwa, const Configuration& c);

}  // namespace nwaq

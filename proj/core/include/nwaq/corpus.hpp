#pragma once

#include <variant>

#include "nwaq/mca.hpp"

namespace nwaq::corpus {

/// Average response time: slave 1 (Sum⁺) counts the letters from a
/// request up to the next grant. Width is unbounded.
Nwa art();
/// Average response time over (r hash* g hash*)^ω. Width 1.
Nwa art_one();
/// At most k pending requests before each grant. Width k.
Nwa k_art(std::size_t k);
/// k request/grant types r1 g1 … rk gk, one pending request per type. Width k.
Nwa art_one_typed(std::size_t k);
/// Block difference: requests minus grants per dollar-separated block.
Nwa average_excess();
/// Slaves +1 and −1 per letter a, invoked in the order one, two (A1) or
/// two, one (A2) on (one two a* hash)^ω.
Nwa cond_motivation(bool swapped);
/// One counter started on hash, incremented on a, terminated on the next hash.
Mca one_counter();

struct Entry {
    std::string name;
    std::variant<Nwa, Mca> model;
};

/// All instances, in file order of the shipped corpus directory.
std::vector<Entry> all();

}  // namespace nwaq::corpus

#pragma once

#include <string>
#include <string_view>

#include "nwaq/mca.hpp"

namespace nwaq {

/// Parses the line-oriented NWA format. Structural problems throw
/// ParseError with the offending line and column; semantic checks are
/// left to validate_nwa.
Nwa parse_nwa(std::string_view text);
std::string render_nwa(const Nwa& nwa);

Mca parse_mca(std::string_view text);
std::string render_mca(const Mca& mca);

/// Header keyword of a model file ("nwa" or "mca"), empty if neither.
std::string model_kind(std::string_view text);

/// "p1 p2 | u1 u2"; the period must be nonempty.
LassoWord parse_lasso(const Alphabet& sigma, std::string_view text);

std::string render_instruction(const Instruction& x);

}  // namespace nwaq

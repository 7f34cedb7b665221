#pragma once

#include "bpa/regular_string.hpp"
#include "bpa/system.hpp"

#include <string_view>

namespace bpa::testing {

inline AnalyzedSystem analyzed(std::string_view text) { return AnalyzedSystem(parse_system(text)); }

/// Parsed and truncated, ready for the LTS.
inline RegularString state(const AnalyzedSystem& sys, std::string_view text) {
    return truncate_unnormed(sys.system().parse_string(text), sys.norms());
}

inline Word word(const AnalyzedSystem& sys, std::string_view text) { return sys.system().parse_word(text); }

}  // namespace bpa::testing

#pragma once

#include <coarse/types.hpp>

#include <string>
#include <vector>

namespace coarse {

enum class Verdict { kEvidence, kRefuted, kInconclusive };

std::string to_string(Verdict v);

enum class Trend { kStable, kGrowing, kOther, kTooShort };

std::string to_string(Trend t);

// Trend of the last three values (ascending radius order): equal -> stable,
// strictly increasing -> growing. Fewer than three values -> kTooShort.
Trend last_three_trend(const std::vector<Length>& values);

// How a reported value was obtained: exactly, as a feasible upper bound, or
// as a [lo, hi] bracket.
enum class Exactness { kExact, kUpper, kInterval };

std::string to_string(Exactness e);

// Fraction of the truncation radius beyond which witnesses count as
// boundary-limited.
inline constexpr double kInteriorFraction = 0.9;

}  // namespace coarse

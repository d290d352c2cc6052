#include <coarse/verdict.hpp>

namespace coarse {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kEvidence: return "evidence";
    case Verdict::kRefuted: return "refuted";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::kStable: return "stable";
    case Trend::kGrowing: return "growing";
    case Trend::kOther: return "mixed";
    case Trend::kTooShort: return "too_short";
  }
  return "mixed";
}

std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::kExact: return "exact";
    case Exactness::kUpper: return "upper";
    case Exactness::kInterval: return "interval";
  }
  return "exact";
}

Trend last_three_trend(const std::vector<Length>& values) {
  if (values.size() < 3) return Trend::kTooShort;
  const Length a = values[values.size() - 3];
  const Length b = values[values.size() - 2];
  const Length c = values[values.size() - 1];
  if (a == b && b == c) return Trend::kStable;
  if (a < b && b < c) return Trend::kGrowing;
  return Trend::kOther;
}

}  // namespace coarse

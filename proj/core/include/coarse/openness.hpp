#pragma once

#include <coarse/families.hpp>

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse {

// Nondecreasing step function on [0, inf). Beyond the last breakpoint it
// either stays flat or, when `tail_slope` is set, grows linearly.
class TIStepFunction {
 public:
  TIStepFunction(std::vector<std::pair<Length, Length>> breakpoints, std::optional<Length> tail_slope,
                 std::string label = {});

  // rho(t) = t / q.
  static TIStepFunction ramp(Length q);
  static TIStepFunction constant(Length c);

  Length operator()(Length t) const;
  // Declared unbounded: the tail grows. Only these qualify as reparameterizations.
  bool unbounded() const { return tail_slope_.has_value(); }
  const std::string& label() const { return label_; }
  const std::vector<std::pair<Length, Length>>& breakpoints() const { return points_; }
  const std::optional<Length>& tail_slope() const { return tail_slope_; }

  nlohmann::json to_json() const;
  static TIStepFunction from_json(const nlohmann::json& j);

 private:
  std::vector<std::pair<Length, Length>> points_;
  std::optional<Length> tail_slope_;
  std::string label_;
};

// Union over x in A of ball(x, rho(depth x)).
PointSet generalized_neighborhood(const FiniteMetricSpace& space, const PointSet& A, const TIStepFunction& rho);

struct OpennessShell {
  Length t_lo = 0;
  Length t_hi = 0;
  Length s = 0;          // min over y in f(A) of the room left around y inside T
  std::size_t count = 0;
  bool saturated = false;  // some y had no complement point in view
};

struct OpennessSample {
  Length r = 0;
  Length cut = 0;  // target depth up to which T is known exactly
  std::vector<OpennessShell> shells;
  std::optional<Length> value;  // envelope over the probe window; empty when no y landed there
};

// rho-tilde candidates for one (A, rho) at one source radius. T is
// f(N(A, rho)) over the source truncation. Throws PreconditionError when A
// stays within half the radius (bounded).
OpennessSample openness_feasible(const MapSpec& f, const Family& A, const TIStepFunction& rho, Length r);

struct OpennessCase {
  std::string set;
  std::string rho;
  // Reported, not judged: constant rho, or a ramp whose integer part does
  // not grow over the probe window across the radii (below resolution).
  bool diagnostic = false;
  std::string note;
  std::vector<OpennessSample> samples;
  Trend trend = Trend::kTooShort;
  Verdict verdict = Verdict::kInconclusive;  // evidence: envelope grows
};

struct OpennessSuite {
  std::vector<Family> sets;
  std::vector<TIStepFunction> rhos;
};

// Rays toward far points, their fiber saturations and seeded hash-selected
// sets, all built at the largest declared radius. Constants {1,2,4,8} plus
// ramps t/8, t/4, t/2.
OpennessSuite default_openness_suite(const MapSpec& f, std::uint64_t seed = 0);

struct OpennessReport {
  std::string map;
  std::vector<Length> radii;
  PointId basepoint = 0;
  std::vector<std::string> suite;
  std::vector<OpennessCase> cases;
  Verdict verdict = Verdict::kInconclusive;
  std::optional<std::size_t> certificate;  // index of a bounded ramp case

  nlohmann::json to_json() const;
};

OpennessReport openness_verdict(const MapSpec& f, const OpennessSuite& suite,
                                std::vector<Length> radii = {});

}  // namespace coarse

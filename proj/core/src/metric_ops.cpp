#include <coarse/metric_ops.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coarse {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNonFinite: return "non_finite";
    case ViolationKind::kNegative: return "negative";
    case ViolationKind::kNonzeroSelf: return "nonzero_self_distance";
    case ViolationKind::kZeroDistinct: return "zero_distinct";
    case ViolationKind::kAsymmetric: return "asymmetric";
    case ViolationKind::kTriangle: return "triangle";
    case ViolationKind::kMissingBasepoint: return "missing_basepoint";
    case ViolationKind::kNotIsometry: return "not_isometry";
    case ViolationKind::kLeavesTruncation: return "leaves_truncation";
    case ViolationKind::kIdentity: return "identity";
    case ViolationKind::kClosure: return "closure";
    case ViolationKind::kInverse: return "inverse";
    case ViolationKind::kInconsistent: return "inconsistent";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : violations) {
    list.push_back({{"kind", to_string(v.kind)}, {"witness", v.witness}, {"detail", v.detail}});
  }
  return {{"ok", ok()}, {"violations", list}, {"omitted", omitted}};
}

namespace {

class Reporter {
 public:
  Reporter(ValidationReport& report, std::size_t cap) : report_(report), cap_(cap) {}
  void add(ViolationKind kind, std::vector<PointId> witness, std::string detail) {
    if (report_.violations.size() < cap_) {
      report_.violations.push_back({kind, std::move(witness), std::move(detail)});
    } else {
      ++report_.omitted;
    }
  }

 private:
  ValidationReport& report_;
  std::size_t cap_;
};

std::string fmt_len(Length v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  return std::to_string(v);
}

}  // namespace

ValidationReport validate_metric(const FiniteMetricSpace& space, std::size_t max_listed) {
  ValidationReport report;
  Reporter rep(report, max_listed);
  const std::size_t n = space.size();
  if (!space.has_basepoint()) {
    rep.add(ViolationKind::kMissingBasepoint, {space.basepoint()}, "basepoint is not a point");
  }

  // Materialize once; spaces above the dense limit pay O(n^2) memory here,
  // which is the price of an exhaustive triple check anyway.
  std::vector<Length> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = space.dist(i, j);
  }

  bool pairs_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const PointId pi = space.id(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Length v = d[i * n + j];
      const PointId pj = space.id(j);
      if (!std::isfinite(v)) {
        rep.add(ViolationKind::kNonFinite, {pi, pj}, "distance is not finite");
        pairs_ok = false;
        continue;
      }
      if (v < 0) {
        rep.add(ViolationKind::kNegative, {pi, pj}, "d = " + fmt_len(v));
        pairs_ok = false;
      }
      if (i == j) {
        if (v != 0) rep.add(ViolationKind::kNonzeroSelf, {pi}, "d(p,p) = " + fmt_len(v));
        continue;
      }
      if (j > i) {
        if (v == 0) rep.add(ViolationKind::kZeroDistinct, {pi, pj}, "distinct points at distance 0");
        if (v != d[j * n + i]) {
          rep.add(ViolationKind::kAsymmetric, {pi, pj},
                  "d(p,q) = " + fmt_len(v) + ", d(q,p) = " + fmt_len(d[j * n + i]));
        }
      }
    }
  }
  if (!pairs_ok) return report;

  // Triangle: for each (i, j), row_i[j] + row_j[k] >= row_i[k] for all k.
  for (std::size_t i = 0; i < n; ++i) {
    const Length* row_i = &d[i * n];
    for (std::size_t j = 0; j < n; ++j) {
      const Length dij = row_i[j];
      const Length* row_j = &d[j * n];
      bool any = false;
      for (std::size_t k = 0; k < n; ++k) any |= (dij + row_j[k] < row_i[k]);
      if (!any) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (dij + row_j[k] < row_i[k]) {
          rep.add(ViolationKind::kTriangle, {space.id(i), space.id(j), space.id(k)},
                  "d(p,r) = " + fmt_len(row_i[k]) + " > d(p,q) + d(q,r) = " +
                      fmt_len(dij) + " + " + fmt_len(row_j[k]));
        }
      }
    }
  }
  return report;
}

PointSet all_points(const FiniteMetricSpace& space) {
  std::vector<std::size_t> idx(space.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return PointSet(std::move(idx));
}

std::vector<Length> distance_to_set(const FiniteMetricSpace& space, const PointSet& A) {
  std::vector<Length> out(space.size(), kInfinity);
  for (std::size_t y = 0; y < space.size(); ++y) {
    Length best = kInfinity;
    for (std::size_t a : A) best = std::min(best, space.dist(y, a));
    out[y] = best;
  }
  return out;
}

PointSet neighborhood(const FiniteMetricSpace& space, const PointSet& A, Length R) {
  std::vector<bool> mask(space.size(), false);
  for (std::size_t y = 0; y < space.size(); ++y) {
    for (std::size_t a : A) {
      if (space.dist(y, a) <= R) {
        mask[y] = true;
        break;
      }
    }
  }
  return PointSet::from_mask(mask);
}

PointSet ball(const FiniteMetricSpace& space, std::size_t center, Length R) {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < space.size(); ++y) {
    if (space.dist(center, y) <= R) out.push_back(y);
  }
  return PointSet(std::move(out));
}

std::vector<PointSet> threshold_components(const FiniteMetricSpace& space, const PointSet& A,
                                           Length R) {
  const auto& members = A.indices();
  const std::size_t m = members.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (space.dist(members[a], members[b]) <= R) {
        const std::size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  // Roots are the smallest member of their component, so walking in order
  // yields components ordered by smallest index.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(m, static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t root = find(a);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = groups.size();
      groups.emplace_back();
    }
    groups[slot[root]].push_back(members[a]);
  }
  std::vector<PointSet> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.emplace_back(std::move(g));
  return out;
}

std::optional<Length> diameter(const FiniteMetricSpace& space, const PointSet& A) {
  if (A.empty()) return std::nullopt;
  Length best = 0;
  const auto& m = A.indices();
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) best = std::max(best, space.dist(m[a], m[b]));
  }
  return best;
}

Length set_distance(const FiniteMetricSpace& space, const PointSet& A, const PointSet& B) {
  Length best = kInfinity;
  for (std::size_t a : A) {
    for (std::size_t b : B) best = std::min(best, space.dist(a, b));
  }
  return best;
}

}  // namespace coarse

#include <coarse/action.hpp>
#include <coarse/report.hpp>

#include <algorithm>
#include <unordered_set>

namespace coarse {

std::vector<PointId> GroupAction::orbit(PointId x) const {
  std::vector<PointId> out;
  out.reserve(elements.size());
  for (const auto& g : elements) out.push_back(g.act(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

class Listing {
 public:
  Listing(ValidationReport& rep, std::size_t cap) : rep_(rep), cap_(cap) {}
  void add(ViolationKind kind, std::vector<PointId> witness, std::string detail) {
    if (rep_.violations.size() < cap_) {
      rep_.violations.push_back({kind, std::move(witness), std::move(detail)});
    } else {
      ++rep_.omitted;
    }
  }

 private:
  ValidationReport& rep_;
  std::size_t cap_;
};

std::string at_radius(Length r) { return " at radius " + format_length(r); }

}  // namespace

ValidationReport verify_action(const GroupAction& action, std::size_t max_listed) {
  ValidationReport rep;
  Listing list(rep, max_listed);
  const std::size_t k = action.order();
  if (k == 0) {
    list.add(ViolationKind::kIdentity, {}, "action has no elements");
    return rep;
  }
  if (action.identity >= k) {
    list.add(ViolationKind::kIdentity, {}, "identity index out of range");
    return rep;
  }
  bool table_ok = action.table.size() == k;
  for (const auto& row : action.table) {
    table_ok = table_ok && row.size() == k &&
               std::all_of(row.begin(), row.end(), [k](std::size_t v) { return v < k; });
  }
  if (!table_ok) {
    list.add(ViolationKind::kClosure, {}, "composition table must be " + std::to_string(k) + " x " +
                                              std::to_string(k) + " with entries < " + std::to_string(k));
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      bool has_inverse = false;
      for (std::size_t j = 0; j < k; ++j) {
        has_inverse = has_inverse || (action.table[i][j] == action.identity &&
                                      action.table[j][i] == action.identity);
      }
      if (!has_inverse) {
        list.add(ViolationKind::kInverse, {static_cast<PointId>(i)},
                 "element " + action.elements[i].name + " has no inverse in the table");
      }
    }
  }

  // Explicit tables must agree wherever two truncations overlap.
  for (std::size_t g = 0; g < k; ++g) {
    std::unordered_map<PointId, PointId> seen;
    for (const auto& [r, perm] : action.elements[g].tables) {
      for (const auto& [x, y] : perm) {
        auto [it, fresh] = seen.emplace(x, y);
        if (!fresh && it->second != y) {
          list.add(ViolationKind::kInconsistent, {x, it->second, y},
                   "element " + action.elements[g].name + " moves " + std::to_string(x) +
                       " differently" + at_radius(r));
        }
      }
    }
  }

  for (Length r : action.tower->declared_radii()) {
    auto space = action.tower->truncation(r);
    const std::size_t n = space->size();
    std::vector<std::vector<std::size_t>> image(k, std::vector<std::size_t>(n));
    std::vector<bool> inside(k, true);
    for (std::size_t g = 0; g < k; ++g) {
      const auto& el = action.elements[g];
      if (auto t = el.tables.find(r); !el.tables.empty() && t == el.tables.end()) {
        list.add(ViolationKind::kInconsistent, {static_cast<PointId>(g)},
                 "element " + el.name + " has no table" + at_radius(r));
      } else if (t != el.tables.end() && t->second.size() != n) {
        list.add(ViolationKind::kInconsistent, {static_cast<PointId>(g)},
                 "element " + el.name + " table covers " + std::to_string(t->second.size()) + " of " +
                     std::to_string(n) + " points" + at_radius(r));
      }
      for (std::size_t i = 0; i < n; ++i) {
        const PointId y = el.act(space->id(i));
        auto j = space->index_of(y);
        if (!j) {
          list.add(ViolationKind::kLeavesTruncation, {space->id(i), y},
                   "element " + el.name + " leaves the truncation" + at_radius(r));
          inside[g] = false;
          break;
        }
        image[g][i] = *j;
      }
    }
    for (std::size_t i = 0; i < n && inside[action.identity]; ++i) {
      if (image[action.identity][i] != i) {
        list.add(ViolationKind::kIdentity, {space->id(i), space->id(image[action.identity][i])},
                 "identity moves a point" + at_radius(r));
        break;
      }
    }
    for (std::size_t g = 0; g < k; ++g) {
      if (!inside[g]) continue;
      bool done = false;
      for (std::size_t a = 0; a < n && !done; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          const Length before = space->dist(a, b);
          const Length after = space->dist(image[g][a], image[g][b]);
          if (before != after) {
            list.add(ViolationKind::kNotIsometry, {space->id(a), space->id(b)},
                     "element " + action.elements[g].name + " changes distance " + std::to_string(before) +
                         " to " + std::to_string(after) + at_radius(r));
            done = true;
            break;
          }
        }
      }
    }
    if (!table_ok) continue;
    for (std::size_t g = 0; g < k; ++g) {
      for (std::size_t h = 0; h < k; ++h) {
        const std::size_t gh = action.table[g][h];
        if (!inside[g] || !inside[h] || !inside[gh]) continue;
        for (std::size_t i = 0; i < n; ++i) {
          if (image[g][image[h][i]] != image[gh][i]) {
            list.add(ViolationKind::kClosure, {static_cast<PointId>(g), static_cast<PointId>(h), space->id(i)},
                     action.elements[g].name + " after " + action.elements[h].name + " is not " +
                         action.elements[gh].name + at_radius(r));
            break;
          }
        }
      }
    }
  }
  return rep;
}

namespace {

Length hausdorff(const DistanceFn& d, const std::vector<PointId>& A, const std::vector<PointId>& B) {
  Length h = 0;
  for (PointId a : A) {
    Length m = kInfinity;
    for (PointId b : B) m = std::min(m, d(a, b));
    h = std::max(h, m);
  }
  for (PointId b : B) {
    Length m = kInfinity;
    for (PointId a : A) m = std::min(m, d(a, b));
    h = std::max(h, m);
  }
  return h;
}

}  // namespace

OrbitSpace orbit_space(std::shared_ptr<const GroupAction> action) {
  const auto report = verify_action(*action, 8);
  if (!report.ok()) {
    throw PreconditionError("invalid group action: " + to_string(report.violations.front().kind) + " (" +
                            report.violations.front().detail + ")");
  }
  const auto& src = action->tower;
  auto canon = [action](PointId x) { return action->orbit(x).back(); };
  DistanceFn metric = [action, d = src->metric()](PointId p, PointId q) {
    if (p == q) return Length{0};
    return hausdorff(d, action->orbit(p), action->orbit(q));
  };
  const PointId base = canon(src->basepoint());
  const auto base_orbit = action->orbit(src->basepoint());
  Length spread = 0;
  for (PointId a : base_orbit) {
    for (PointId b : base_orbit) spread = std::max(spread, src->metric()(a, b));
  }
  BallEnumerator ball = [src, canon, metric, base, spread](Length r) {
    auto space = src->truncation(r + spread);
    std::vector<PointId> out;
    std::unordered_set<PointId> seen;
    for (PointId x : space->ids()) {
      const PointId c = canon(x);
      if (seen.insert(c).second && metric(base, c) <= r) out.push_back(c);
    }
    return out;
  };
  auto tower = std::make_shared<TruncationTower>(src->name() + "/G", base, metric, std::move(ball),
                                                 src->declared_radii(), src->chart());
  if (!src->generator().is_null()) {
    tower->set_generator({{"name", "orbit_space"},
                          {"params", {{"space", src->generator()}, {"action", action->generator}}}});
  }

  auto q = std::make_shared<MapSpec>();
  q->name = "quotient(" + src->name() + ")";
  q->source = src;
  q->target = tower;
  q->apply = canon;
  // Isometric actions never move an orbit farther from the base orbit than
  // the point itself.
  q->image_radius = [](Length r) { return r; };
  if (!src->generator().is_null()) {
    q->generator = {{"name", "quotient"}, {"params", {{"space", src->generator()}, {"action", action->generator}}}};
  }
  return OrbitSpace{tower, q, std::move(action)};
}

ValidationReport check_orbit_shortcut(const OrbitSpace& orbits, Length r, std::size_t max_listed) {
  ValidationReport rep;
  Listing list(rep, max_listed);
  auto space = orbits.tower->truncation(r);
  const auto& d = orbits.action->tower->metric();
  for (std::size_t i = 0; i < space->size(); ++i) {
    for (std::size_t j = i + 1; j < space->size(); ++j) {
      const PointId p = space->id(i), q = space->id(j);
      Length shortcut = kInfinity;
      for (const auto& g : orbits.action->elements) shortcut = std::min(shortcut, d(p, g.act(q)));
      const Length full = space->dist(i, j);
      if (shortcut != full) {
        list.add(ViolationKind::kInconsistent, {p, q},
                 "min over group " + std::to_string(shortcut) + " vs Hausdorff " + std::to_string(full));
      }
    }
  }
  return rep;
}

}  // namespace coarse

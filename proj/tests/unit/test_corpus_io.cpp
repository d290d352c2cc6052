#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <map>
#include <sstream>

using namespace coarse;
using nlohmann::json;

namespace {

// Small parameters per corpus entry so exhaustive validation stays quick.
json small_params(const std::string& name) {
  if (name == "grid" || name == "quarter_plane" || name == "reflection_Z2") return {{"M", 9}};
  if (name == "binary_tree") return {{"depth", 6}};
  if (name == "xor" || name == "coarse_cantor" || name == "cantor_lowbit") return {{"k", 6}};
  if (name == "comb_tree") return {{"M", 16}};
  return {{"M", 40}};
}

void expect_same_tower(const TruncationTower& a, const TruncationTower& b) {
  ASSERT_EQ(a.declared_radii(), b.declared_radii());
  for (Length r : a.declared_radii()) {
    auto sa = a.truncation(r), sb = b.truncation(r);
    ASSERT_EQ(std::vector<PointId>(sa->ids().begin(), sa->ids().end()),
              std::vector<PointId>(sb->ids().begin(), sb->ids().end()));
    for (std::size_t i = 0; i < sa->size(); ++i) {
      for (std::size_t j = 0; j < sa->size(); ++j) ASSERT_EQ(sa->dist(i, j), sb->dist(i, j));
    }
  }
}

}  // namespace

TEST(Corpus, EveryEntryValidatesAtEveryRadius) {
  for (const auto& e : corpus_entries()) {
    SCOPED_TRACE(e.name);
    const auto b = corpus_build(e.name, small_params(e.name));
    ASSERT_TRUE(b.space);
    for (Length r : b.space->declared_radii()) EXPECT_TRUE(validate_metric(*b.space->truncation(r)).ok()) << r;
    if (b.map) {
      for (Length r : b.map->target->declared_radii()) EXPECT_TRUE(validate_metric(*b.map->target->truncation(r)).ok());
    }
    if (b.action) EXPECT_TRUE(verify_action(*b.action).ok());
  }
}

TEST(Corpus, BuildersAreDeterministic) {
  for (const auto& e : corpus_entries()) {
    SCOPED_TRACE(e.name);
    const auto a = corpus_build(e.name, small_params(e.name));
    const auto b = corpus_build(e.name, small_params(e.name));
    expect_same_tower(*a.space, *b.space);
    EXPECT_EQ(a.params, b.params);
  }
}

TEST(Corpus, RejectsUnknownNamesAndParameters) {
  EXPECT_THROW(corpus_build("moebius"), ConfigError);
  EXPECT_THROW(corpus_build("half_line", {{"N", 3}}), ConfigError);
  EXPECT_THROW(coarse_cantor(0), ConfigError);
  EXPECT_THROW(coarse_cantor(21), ConfigError);
}

TEST(Corpus, StockEntries) {
  auto h = corpus_build("half_line", {{"M", 100}}).space;
  auto s = h->truncation(100);
  EXPECT_EQ(s->basepoint(), 0);
  ASSERT_EQ(s->size(), 101u);
  EXPECT_EQ(s->id(0), 0);
  EXPECT_EQ(s->id(100), 100);
  auto g = corpus_build("grid", {{"d", 2}, {"M", 30}}).space->truncation(30);
  EXPECT_EQ(g->size(), 61u * 61u);
  EXPECT_EQ(g->dist(*g->index_of(encode_xy(-3, 4)), *g->index_of(encode_xy(2, -1))), 5);
  EXPECT_TRUE(verify_action(*corpus_build("reflection_Z", {{"M", 200}}).action).ok());
}

TEST(CoarseCantor, FormulaExamples) {
  auto one = coarse_cantor(1)->truncation(2);
  ASSERT_EQ(one->size(), 2u);
  EXPECT_EQ(one->dist(0, 1), 2);
  auto three = coarse_cantor(3);
  EXPECT_EQ(three->metric()(0b001, 0b011), 4);
  EXPECT_EQ(cantor_map(3)->apply(0b101), 5);
}

TEST(CoarseCantor, DistanceIsTwiceXor) {
  for (int k = 1; k <= 10; ++k) {
    auto t = coarse_cantor(k);
    auto s = t->truncation(t->declared_radii().back());
    ASSERT_EQ(s->size(), std::size_t{1} << k);
    for (std::size_t i = 0; i < s->size(); ++i) {
      for (std::size_t j = 0; j < s->size(); ++j) {
        // Digit-weighted sum with weights 2^1, 2^2, ...
        Length d = 0;
        for (int bit = 0; bit < k; ++bit) {
          if (((s->id(i) ^ s->id(j)) >> bit) & 1) d += std::ldexp(1.0, bit + 1);
        }
        ASSERT_EQ(s->dist(i, j), d);
        ASSERT_EQ(s->dist(i, j), 2 * (s->id(i) ^ s->id(j)));
      }
    }
  }
}

TEST(Comb, PathDistanceMatchesTreeSearch) {
  const int M = 24;
  auto t = comb_tree(M, CombMetric::kPath);
  auto s = t->truncation(t->declared_radii().back());
  // BFS over the unit-step tree; rows (x, k) with k <= x, rungs at x = k + 1.
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pts;
  for (int x = 1; x <= 4 * M; ++x) {
    for (int k = 1; k <= x; ++k) {
      index[{x, k}] = static_cast<int>(pts.size());
      pts.push_back({x, k});
    }
  }
  auto neighbors = [&](std::pair<int, int> p) {
    std::vector<std::pair<int, int>> out;
    auto [x, k] = p;
    if (x > k) out.push_back({x - 1, k});
    if (x < 4 * M) out.push_back({x + 1, k});
    if (x == k + 1) out.push_back({x, k + 1});
    if (x == k && k >= 2) out.push_back({x, k - 1});
    return out;
  };
  EXPECT_EQ(comb_path_distance(5, 1, 5, 2), 7);
  for (std::size_t i = 0; i < s->size(); ++i) {
    const auto src = decode_xy(s->id(i));
    std::vector<int> d(pts.size(), -1);
    std::deque<std::pair<int, int>> q{{static_cast<int>(src.first), static_cast<int>(src.second)}};
    d[index.at(q.front())] = 0;
    while (!q.empty()) {
      auto p = q.front();
      q.pop_front();
      for (auto nb : neighbors(p)) {
        if (d[index.at(nb)] == -1) {
          d[index.at(nb)] = d[index.at(p)] + 1;
          q.push_back(nb);
        }
      }
    }
    for (std::size_t j = 0; j < s->size(); ++j) {
      const auto dst = decode_xy(s->id(j));
      ASSERT_EQ(s->dist(i, j), d[index.at({static_cast<int>(dst.first), static_cast<int>(dst.second)})])
          << src.first << "," << src.second << " -> " << dst.first << "," << dst.second;
    }
  }
}

TEST(Comb, PathDominatesEuclidean) {
  for (std::int64_t x1 = 1; x1 <= 30; ++x1) {
    for (std::int64_t k1 = 1; k1 <= x1; ++k1) {
      EXPECT_EQ(comb_euclidean_distance(x1, 1, x1, 2 <= x1 ? 2 : 1), x1 >= 2 ? 1 : 0);
      for (std::int64_t x2 = 1; x2 <= 30; ++x2) {
        for (std::int64_t k2 = 1; k2 <= x2; ++k2) {
          const Length e = comb_euclidean_distance(x1, k1, x2, k2);
          ASSERT_LE(e, comb_path_distance(x1, k1, x2, k2));
          const double exact = std::hypot(double(x1 - x2), double(k1 - k2));
          ASSERT_GE(e, exact - 1e-9);
          ASSERT_LT(e, exact + 1);
        }
      }
    }
  }
}

TEST(Comb, CeilSqrtIsExact) {
  std::mt19937_64 rng(113);
  std::uniform_int_distribution<std::int64_t> pick(0, std::int64_t{1} << 50);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t q = i < 200 ? i : pick(rng);
    const std::int64_t c = ceil_sqrt(q);
    EXPECT_GE(static_cast<__int128>(c) * c, q);
    if (c > 0) EXPECT_LT(static_cast<__int128>(c - 1) * (c - 1), q);
  }
}

TEST(Io, ParseErrorsCarryPosition) {
  try {
    parse_json_text("{\n  \"points\": [1, 2,,]\n}", "space.json");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("space.json:2:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(space_from_json(json{{"points", {0, 1}}, {"basepoint", 0}}), ConfigError);
  EXPECT_THROW(space_from_json(json{{"points", {0, 1}}, {"basepoint", 0}, {"metric", {{"kind", "matrix"}, {"rows", {{0, 1}}}}}}),
               ConfigError);
}

TEST(Io, MatrixSpaceRoundTrip) {
  std::mt19937_64 rng(127);
  auto s = oracle::random_metric(9, rng);
  auto t = tower_from_space("m", s);
  const json j = space_to_json(*t, s.max_depth());
  EXPECT_EQ(j.at("metric").at("kind"), "matrix");
  auto back = space_from_json(parse_json_text(j.dump(), "mem"));
  auto s2 = back->truncation(s.max_depth());
  ASSERT_EQ(s2->size(), s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) EXPECT_EQ(s2->dist(a, b), s.dist(a, b));
  }
}

TEST(Io, GeneratorSpaceRoundTrip) {
  for (const auto& t : {integer_line(30), coarse_cantor(5), comb_tree(12, CombMetric::kEuclidean)}) {
    const json j = space_to_json(*t, t->declared_radii().back());
    EXPECT_EQ(j.at("metric").at("kind"), "generator");
    expect_same_tower(*t, *space_from_json(j));
  }
}

TEST(Io, CorpusDocumentsFeedEveryReader) {
  const auto cantor = corpus_build("coarse_cantor", {{"k", 6}});
  const json doc = corpus_document(cantor);
  auto f = map_from_json(doc);
  EXPECT_EQ(f->apply(13), cantor.map->apply(13));
  expect_same_tower(*f->source, *cantor.map->source);

  const auto refl = corpus_build("reflection_Z", {{"M", 20}});
  auto act = action_from_json(corpus_document(refl));
  EXPECT_EQ(act->order(), 2u);
  EXPECT_TRUE(verify_action(*act).ok());

  const auto comb = corpus_build("comb_tree", {{"M", 20}});
  const json cdoc = corpus_document(comb);
  auto fams = families_from_json(cdoc, space_from_json(cdoc));
  EXPECT_EQ(fams.members.size(), 5u);
}

TEST(Io, ExplicitMapAndAction) {
  const json space = {{"points", {-1, 0, 1}},
                      {"basepoint", 0},
                      {"metric", {{"kind", "matrix"}, {"rows", {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}}}}};
  const json half = {{"points", {0, 1}}, {"basepoint", 0}, {"metric", {{"kind", "matrix"}, {"rows", {{0, 1}, {1, 0}}}}}};
  auto f = map_from_json({{"source", space}, {"target", half}, {"table", {{"-1", 1}, {"0", 0}, {"1", 1}}}});
  EXPECT_EQ(f->apply(-1), 1);
  EXPECT_THROW(f->apply(7), PreconditionError);

  auto tower = space_from_json(space);
  const json act = json::parse(R"({
    "elements": [
      {"name": "id", "perm": {"1": {"-1": -1, "0": 0, "1": 1}}},
      {"name": "neg", "perm": {"1": {"-1": 1, "0": 0, "1": -1}}}
    ],
    "table": [[0, 1], [1, 0]]
  })");
  auto a = action_from_json(act, tower);
  EXPECT_TRUE(verify_action(*a).ok());
  EXPECT_THROW(action_from_json(act), ConfigError);
}

TEST(Report, LengthFormatting) {
  EXPECT_EQ(format_length(3.0), "3");
  EXPECT_EQ(format_length(2.5), "2.5");
  EXPECT_EQ(format_length(kInfinity), "inf");
  EXPECT_EQ(format_length(-kInfinity), "-inf");
  EXPECT_EQ(format_length(std::optional<Length>{}), "-");
  EXPECT_EQ(format_length(0.1), "0.1");
}

TEST(Report, TsvAndJsonMirror) {
  Report r;
  r.command = "demo";
  r.header["seed"] = 7;
  r.columns = {"a", "b"};
  r.add_row({"1", "x"});
  r.add_row({"2", "y"});
  EXPECT_EQ(r.tsv(), "# command\tdemo\n# seed\t7\na\tb\n1\tx\n2\ty\n");
  const json j = r.to_json();
  EXPECT_EQ(j.at("table").size(), 2u);
  EXPECT_EQ(j.at("table")[1].at("b"), "y");
  EXPECT_EQ(j.at("header").at("seed"), 7);
  std::ostringstream out;
  write_report(r, std::nullopt, "json", out);
  EXPECT_EQ(json::parse(out.str()), j);
}

TEST(Cache, KeyIsStableAndDistinct) {
  const json g1 = {{"name", "half_line"}, {"params", {{"M", 10}}}};
  const json g2 = {{"name", "half_line"}, {"params", {{"M", 11}}}};
  EXPECT_EQ(PointCache::key(g1, 5), PointCache::key(g1, 5));
  EXPECT_NE(PointCache::key(g1, 5), PointCache::key(g2, 5));
  EXPECT_NE(PointCache::key(g1, 5), PointCache::key(g1, 6));
}

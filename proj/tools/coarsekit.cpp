// coarsekit: command-line front end for the coarse-geometry analyses.
//
// Exit status: 0 done, 1 internal error, 2 configuration error (bad flags,
// malformed JSON, unmet preconditions), 3 validation failure, 4 budget
// exhausted.

#include <coarse/coarse.hpp>
#include <coarse/parallel.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace coarse;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBudget = 4;

struct Common {
  std::string format = "tsv";
  std::string out;
  std::string cache;
  std::size_t threads = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"tsv", "json"}));
  if (with_out) cmd->add_option("--out", c.out, "write <prefix>.tsv and <prefix>.json");
  cmd->add_option("--cache", c.cache, "directory for memoized truncations");
  cmd->add_option("--threads", c.threads, "worker threads (0: all cores)");
}

void apply_common(const Common& c) {
  if (!c.cache.empty()) PointCache::instance().set_directory(c.cache);
  parallel_workers() = c.threads;
}

std::vector<Length> parse_lengths(const std::string& text, const std::string& flag) {
  std::vector<Length> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(flag + ": '" + item + "' is not a number");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (Length v : parse_lengths(text, flag)) {
    if (v != std::floor(v) || v < 0) throw ConfigError(flag + ": expected non-negative integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string join(const std::vector<Length>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_length(v[i]);
  return s;
}

std::optional<std::string> prefix(const Common& c) {
  return c.out.empty() ? std::nullopt : std::optional<std::string>(c.out);
}

std::vector<Length> radii_or_declared(const std::string& text, const TruncationTower& t) {
  auto r = parse_lengths(text, "--radii");
  return r.empty() ? t.declared_radii() : r;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  Common common;
  std::string space;
  std::string radii;
};

int run_validate(const ValidateArgs& a) {
  auto tower = space_from_json(read_json_file(a.space));
  Report rep;
  rep.command = "validate";
  rep.header = {{"space", a.space}};
  rep.columns = {"r", "points", "ok", "violations", "first"};
  json body = json::array();
  bool ok = true;
  for (Length r : radii_or_declared(a.radii, *tower)) {
    auto space = tower->truncation(r);
    auto v = validate_metric(*space);
    if (!space->has_basepoint()) {
      v.violations.push_back({ViolationKind::kMissingBasepoint, {space->basepoint()}, "basepoint not in truncation"});
    }
    ok = ok && v.ok();
    std::string first = "-";
    if (!v.violations.empty()) {
      first = to_string(v.violations.front().kind) + ":" + json(v.violations.front().witness).dump();
    }
    rep.add_row({format_length(r), std::to_string(space->size()), v.ok() ? "yes" : "no",
                 std::to_string(v.violations.size() + v.omitted), first});
    json entry = v.to_json();
    entry["r"] = r;
    body.push_back(std::move(entry));
  }
  rep.body = {{"radii", body}};
  write_report(rep, prefix(a.common), a.common.format, std::cout);
  return ok ? 0 : kExitValidation;
}

// ---------------------------------------------------------------- profile

struct ProfileArgs {
  Common common;
  std::string kind;
  std::string map;
  std::string R;
  std::string S;
  std::string radii;
  int n = 2;
  std::string windows = "diameter";
  std::size_t max_windows = 4'000'000;
};

void profile_rows(Report& rep, const ScaleProfile& p, const std::string& R_label) {
  for (const auto& s : p.samples) {
    std::string verdict = "-";
    for (const auto& v : p.per_scale) {
      if (v.scale == s.scale) verdict = to_string(v.verdict);
    }
    const std::string value = s.empty ? "-"
                              : s.exactness == Exactness::kInterval
                                  ? "[" + format_length(s.value_lo) + "," + format_length(s.value) + "]"
                                  : format_length(s.value);
    rep.add_row({p.kind, R_label.empty() ? format_length(s.scale) : R_label,
                 R_label.empty() ? "-" : format_length(s.scale), format_length(s.r), value,
                 s.saturated ? "yes" : "no", to_string(s.exactness), verdict});
  }
}

int run_profile(const ProfileArgs& a) {
  auto f = map_from_json(read_json_file(a.map));
  const auto radii = radii_or_declared(a.radii, *f->source);
  if (!a.radii.empty()) {
    // Explicit radii replace the source's declared list for this run.
    auto g = std::make_shared<MapSpec>(*f);
    g->source = with_radii(*f->source, radii);
    f = g;
  }
  const auto scales = parse_lengths(a.R, "--R");
  NToOneOptions opts;
  opts.windows.family = window_family_from_string(a.windows);
  opts.windows.max_windows = a.max_windows;
  opts.keep_certificates = false;

  Report rep;
  rep.command = "profile";
  rep.header = {{"kind", a.kind},   {"map", f->name},      {"radii", join(radii)},
                {"windows", a.windows}, {"max_windows", a.max_windows},
                {"exact_vertex_cap", opts.limits.exact_vertex_cap},
                {"exact_color_cap", opts.limits.exact_color_cap}, {"node_budget", opts.limits.node_budget}};
  rep.columns = {"kind", "R", "S", "r", "S_or_m", "saturated", "exactness", "verdict"};
  if (scales.empty()) throw ConfigError("--R: at least one scale is required");
  json body;
  if (a.kind == "coarse") {
    auto p = coarseness_profile(*f, scales, radii);
    profile_rows(rep, p, "");
    body = p.to_json();
  } else if (a.kind == "proper") {
    auto p = properness_profile(*f, scales, radii);
    profile_rows(rep, p, "");
    body = p.to_json();
  } else if (a.kind == "ntone") {
    rep.header["n"] = a.n;
    auto p = n_to_1_profile(*f, a.n, scales, radii, opts);
    profile_rows(rep, p, "");
    body = p.to_json();
  } else if (a.kind == "finite") {
    auto grid = parse_lengths(a.S, "--S");
    if (grid.empty()) grid = geometric_grid(radii.back() / 4);
    rep.header["S"] = join(grid);
    body = json::array();
    for (Length R : scales) {
      auto p = finite_to_1_profile(*f, R, radii, grid, opts);
      profile_rows(rep, p, format_length(R));
      json entry = p.to_json();
      entry["R"] = R;
      body.push_back(std::move(entry));
    }
  } else {
    throw ConfigError("--kind: expected coarse|proper|ntone|finite, got '" + a.kind + "'");
  }
  rep.body = std::move(body);
  write_report(rep, prefix(a.common), a.common.format, std::cout);
  return 0;
}

// ---------------------------------------------------------------- dim-control

struct DimArgs {
  Common common;
  std::string space;
  std::string n = "0,1,2";
  std::string R = "1,2,4";
  std::string radii;
  std::size_t exact_cap = 40;
  std::uint64_t exhaustion_cap = 1ULL << 24;
  std::string strategy = "best";
  std::uint64_t seed = 0;
  bool no_lower = false;
  bool dump_covers = false;
};

int run_dim(const DimArgs& a) {
  auto tower = space_from_json(read_json_file(a.space));
  const auto ns = parse_ints(a.n, "--n");
  if (ns.empty()) throw ConfigError("--n: at least one value is required");
  const int n_max = *std::max_element(ns.begin(), ns.end());
  AsdimOptions opts;
  opts.limits.exact_cap = a.exact_cap;
  opts.limits.exhaustion_cap = a.exhaustion_cap;
  opts.strategy = upper_strategy_from_string(a.strategy);
  opts.seed = a.seed;
  opts.lower_bounds = !a.no_lower;
  const auto radii = radii_or_declared(a.radii, *tower);
  const auto R_list = parse_lengths(a.R, "--R");
  auto rep_data = asdim_estimate(*tower, n_max, R_list, radii, opts);

  Report rep;
  rep.command = "dim-control";
  rep.header = {{"space", tower->name()},
                {"radii", join(rep_data.radii)},
                {"R", join(R_list)},
                {"seed", a.seed},
                {"strategy", a.strategy},
                {"exact_cap", a.exact_cap},
                {"exhaustion_cap", a.exhaustion_cap},
                {"node_budget", opts.limits.node_budget},
                {"interval", "[" + std::to_string(rep_data.lo) + "," +
                                 (rep_data.hi ? std::to_string(*rep_data.hi) : std::string("-")) + "]"}};
  rep.columns = {"n", "R", "r", "B", "exactness", "strategy", "verified"};
  bool all_verified = true;
  for (const auto& c : rep_data.table) {
    if (std::find(ns.begin(), ns.end(), c.n) == ns.end()) continue;
    all_verified = all_verified && c.verified;
    rep.add_row({std::to_string(c.n), format_length(c.R), format_length(c.r), format_length(c.B),
                 to_string(c.exactness), c.strategy, c.verified ? "yes" : "no"});
  }
  json body = rep_data.to_json();
  if (a.dump_covers) {
    json covers = json::array();
    for (const auto& c : rep_data.table) {
      if (std::find(ns.begin(), ns.end(), c.n) == ns.end()) continue;
      auto space = tower->truncation(c.r);
      auto res = c.strategy == "exact" ? control_exact(*space, c.n, c.R, opts.limits)
                                       : control_upper(*space, c.n, c.R, upper_strategy_from_string(c.strategy),
                                                       a.seed);
      json cj = res.cover.to_json(*space);
      cj["r"] = c.r;
      covers.push_back(std::move(cj));
    }
    body["covers"] = std::move(covers);
  }
  rep.body = std::move(body);
  write_report(rep, prefix(a.common), a.common.format, std::cout);
  return all_verified ? 0 : kExitValidation;
}

// ---------------------------------------------------------------- witness

struct WitnessArgs {
  Common common;
  std::string map;
  std::size_t k = 2;
  std::uint64_t budget = 100'000;
  std::uint64_t seed = 0;
  std::string R;
  std::string windows = "diameter";
  std::size_t levels = 4;
};

int run_witness(const WitnessArgs& a) {
  auto f = map_from_json(read_json_file(a.map));
  WitnessOptions opts;
  opts.budget = a.budget;
  opts.seed = a.seed;
  opts.R_grid = parse_lengths(a.R, "--R");
  opts.family = window_family_from_string(a.windows);
  opts.max_levels = a.levels;
  auto res = witness_search(*f, a.k, opts);

  Report rep;
  rep.command = "witness";
  rep.header = {{"map", f->name}, {"k", a.k}, {"budget", a.budget}, {"seed", a.seed},
                {"windows", a.windows}, {"levels", a.levels}};
  rep.columns = {"k", "result", "expansions", "pair_R", "image_R", "disjointness", "divergence", "recheck"};
  json body = {{"expansions", res.expansions}, {"budget_spent", res.budget_spent}, {"note", res.note}};
  if (res.certificate) {
    const auto& c = *res.certificate;
    const bool ok = recheck_certificate(*f, c);
    rep.add_row({std::to_string(a.k), "certificate", std::to_string(res.expansions), format_length(c.pair_R),
                 format_length(c.image_R), to_string(c.disjointness.verdict), to_string(c.image_divergence.verdict),
                 ok ? "pass" : "fail"});
    body["certificate"] = c.to_json();
    body["recheck"] = ok;
  } else {
    rep.add_row({std::to_string(a.k), res.budget_spent ? "budget" : "exhausted", std::to_string(res.expansions), "-",
                 "-", "-", "-", "-"});
    body["certificate"] = nullptr;
  }
  rep.body = std::move(body);
  write_report(rep, prefix(a.common), a.common.format, std::cout);
  return 0;
}

// ---------------------------------------------------------------- openness

struct OpennessArgs {
  Common common;
  std::string map;
  std::string suite = "default";
  std::uint64_t seed = 0;
  std::string radii;
};

OpennessSuite suite_from_file(const std::string& path, const MapSpec& f) {
  const json j = read_json_file(path);
  OpennessSuite s;
  const auto fams = families_from_json(json{{"families", j.at("sets")}}, f.source);
  s.sets = fams.members;
  if (j.contains("rho")) {
    for (const auto& r : j["rho"]) s.rhos.push_back(TIStepFunction::from_json(r));
  } else {
    s.rhos = default_openness_suite(f).rhos;
  }
  return s;
}

int run_openness(const OpennessArgs& a) {
  auto f = map_from_json(read_json_file(a.map));
  const auto suite = a.suite == "default" ? default_openness_suite(*f, a.seed) : suite_from_file(a.suite, *f);
  auto res = openness_verdict(*f, suite, parse_lengths(a.radii, "--radii"));

  Report rep;
  rep.command = "openness";
  rep.header = {{"map", f->name}, {"suite", a.suite}, {"seed", a.seed}, {"radii", join(res.radii)},
                {"basepoint", res.basepoint}, {"verdict", to_string(res.verdict)}};
  rep.columns = {"set", "rho", "judged", "values", "trend", "verdict"};
  for (const auto& c : res.cases) {
    std::string values;
    for (const auto& s : c.samples) values += (values.empty() ? "" : ",") + format_length(s.value);
    rep.add_row({c.set, c.rho, c.diagnostic ? "no" : "yes", values.empty() ? "-" : values, to_string(c.trend),
                 to_string(c.verdict)});
  }
  rep.body = res.to_json();
  write_report(rep, prefix(a.common), a.common.format, std::cout);
  return 0;
}

// ---------------------------------------------------------------- quotient

struct QuotientArgs {
  Common common;
  std::string space;
  std::string action;
  std::string radii;
  std::string emit;
};

int run_quotient(const QuotientArgs& a) {
  TowerPtr tower = a.space.empty() ? nullptr : space_from_json(read_json_file(a.space));
  auto action = action_from_json(read_json_file(a.action), tower);
  Report rep;
  rep.command = "quotient";
  rep.header = {{"space", action->tower->name()}, {"order", action->order()}};
  auto check = verify_action(*action);
  if (!check.ok()) {
    rep.columns = {"kind", "witness", "detail"};
    for (const auto& v : check.violations) rep.add_row({to_string(v.kind), json(v.witness).dump(), v.detail});
    rep.body = {{"action", check.to_json()}};
    write_report(rep, prefix(a.common), a.common.format, std::cout);
    return kExitValidation;
  }
  auto orbits = orbit_space(action);
  rep.columns = {"r", "points", "orbits", "metric_ok", "shortcut_mismatches", "surjectivity_defect"};
  bool ok = true;
  json rows = json::array();
  for (Length r : radii_or_declared(a.radii, *action->tower)) {
    auto src = action->tower->truncation(r);
    auto q = orbits.tower->truncation(r);
    auto metric = validate_metric(*q);
    auto shortcut = check_orbit_shortcut(orbits, r);
    auto surj = surjectivity_defect(*orbits.quotient, r);
    ok = ok && metric.ok() && shortcut.ok();
    rep.add_row({format_length(r), std::to_string(src->size()), std::to_string(q->size()),
                 metric.ok() ? "yes" : "no", std::to_string(shortcut.violations.size() + shortcut.omitted),
                 format_length(surj.defect)});
    rows.push_back({{"r", r}, {"metric", metric.to_json()}, {"shortcut", shortcut.to_json()},
                    {"surjectivity_defect", surj.defect}});
  }
  rep.body = {{"action", check.to_json()}, {"radii", rows}};
  if (!a.emit.empty()) {
    std::ofstream out(a.emit, std::ios::binary);
    if (!out) throw ConfigError("--emit: cannot write " + a.emit);
    const auto& t = *orbits.tower;
    out << space_to_json(t, t.declared_radii().back()).dump(2) << "\n";
  }
  write_report(rep, prefix(a.common), a.common.format, std::cout);
  return ok ? 0 : kExitValidation;
}

// ---------------------------------------------------------------- corpus

struct CorpusArgs {
  Common common;
  std::string name;
  std::string params = "{}";
  std::string out;
};

int run_corpus_list(const CorpusArgs& a) {
  Report rep;
  rep.command = "corpus list";
  rep.columns = {"name", "params", "summary"};
  json body = json::array();
  for (const auto& e : corpus_entries()) {
    rep.add_row({e.name, e.defaults.dump(), e.summary});
    body.push_back({{"name", e.name}, {"params", e.defaults}, {"summary", e.summary}});
  }
  rep.body = std::move(body);
  write_report(rep, std::nullopt, a.common.format, std::cout);
  return 0;
}

int run_corpus_emit(const CorpusArgs& a) {
  const auto params = parse_json_text(a.params, "--params");
  const auto doc = corpus_document(corpus_build(a.name, params)).dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << doc;
    return 0;
  }
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw ConfigError("--out: cannot write " + a.out);
  out << doc;
  return 0;
}

// ---------------------------------------------------------------- check-raising

struct RaisingArgs {
  Common common;
  std::string X;
  std::string Y;
  int n = 1;
  bool open = false;
};

DimInterval interval_arg(const std::string& text, const std::string& flag) {
  if (std::filesystem::exists(text)) {
    const json j = read_json_file(text);
    const json& iv = j.contains("result") ? j["result"].at("interval") : j.at("interval");
    DimInterval d;
    d.lo = iv.at(0).get<int>();
    if (!iv.at(1).is_null()) d.hi = iv.at(1).get<int>();
    return d;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError(flag + ": expected lo:hi, lo: or a dim-control JSON report");
  DimInterval d;
  try {
    d.lo = std::stoi(text.substr(0, colon));
    if (colon + 1 < text.size()) d.hi = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError(flag + ": '" + text + "' is not an interval");
  }
  if (d.hi && *d.hi < d.lo) throw ConfigError(flag + ": empty interval '" + text + "'");
  return d;
}

int run_raising(const RaisingArgs& a) {
  const auto X = interval_arg(a.X, "--X");
  const auto Y = interval_arg(a.Y, "--Y");
  auto v = check_raising_inequality(X, Y, a.n, a.open);
  auto show = [](const DimInterval& d) {
    return "[" + std::to_string(d.lo) + "," + (d.hi ? std::to_string(*d.hi) : std::string("-")) + "]";
  };
  Report rep;
  rep.command = "check-raising";
  rep.header = {{"n", a.n}, {"coarsely_open", a.open}};
  rep.columns = {"X", "Y", "n", "verdict", "bound_attainable", "preserving_admissible"};
  rep.add_row({show(X), show(Y), std::to_string(a.n), v.verdict, v.bound_attainable ? "yes" : "no",
               v.preserving_admissible ? "yes" : "no"});
  rep.body = v.to_json();
  write_report(rep, prefix(a.common), a.common.format, std::cout);
  return v.consistent ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarsekit: coarse-geometry invariants on finite truncations of proper metric spaces"};
  app.require_subcommand(1);
  std::function<int()> action;

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "check metric axioms at each radius");
  add_common(validate, va.common);
  validate->add_option("--space", va.space, "space JSON")->required();
  validate->add_option("--radii", va.radii, "comma-separated radii (default: declared)");
  validate->callback([&] { action = [&] { apply_common(va.common); return run_validate(va); }; });

  ProfileArgs pa;
  auto* profile = app.add_subcommand("profile", "scale profiles of a map");
  add_common(profile, pa.common);
  profile->add_option("--kind", pa.kind, "coarse|proper|ntone|finite")->required();
  profile->add_option("--map", pa.map, "map JSON")->required();
  profile->add_option("--R", pa.R, "comma-separated scales (S values for proper)")->required();
  profile->add_option("--S", pa.S, "S grid for finite (default 1,2,4,... up to r/4)");
  profile->add_option("--radii", pa.radii, "comma-separated source radii (default: declared)");
  profile->add_option("--n", pa.n, "n for ntone");
  profile->add_option("--windows", pa.windows, "diameter|balls")->check(CLI::IsMember({"diameter", "balls"}));
  profile->add_option("--max-windows", pa.max_windows, "window enumeration cap");
  profile->callback([&] { action = [&] { apply_common(pa.common); return run_profile(pa); }; });

  DimArgs da;
  auto* dim = app.add_subcommand("dim-control", "asymptotic-dimension control table and interval");
  add_common(dim, da.common);
  dim->add_option("--space", da.space, "space JSON")->required();
  dim->add_option("--n", da.n, "comma-separated n values");
  dim->add_option("--R", da.R, "comma-separated R values");
  dim->add_option("--radii", da.radii, "comma-separated radii (default: declared)");
  dim->add_option("--exact-cap", da.exact_cap, "largest truncation solved exactly");
  dim->add_option("--exhaustion-cap", da.exhaustion_cap, "coloring cap for refutation checks");
  dim->add_option("--strategy", da.strategy, "components|layered|brick|greedy|best");
  dim->add_option("--seed", da.seed, "seed for the greedy strategy");
  dim->add_flag("--no-lower", da.no_lower, "skip refutation lower bounds");
  dim->add_flag("--dump-covers", da.dump_covers, "include covers in the JSON output");
  dim->callback([&] { action = [&] { apply_common(da.common); return run_dim(da); }; });

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "search for gradually disjoint families with non-divergent images");
  add_common(witness, wa.common);
  witness->add_option("--map", wa.map, "map JSON")->required();
  witness->add_option("--k", wa.k, "number of families")->required();
  witness->add_option("--budget", wa.budget, "node expansion budget");
  witness->add_option("--seed", wa.seed, "tie-break seed");
  witness->add_option("--R", wa.R, "comma-separated image closeness scales");
  witness->add_option("--windows", wa.windows, "diameter|balls")->check(CLI::IsMember({"diameter", "balls"}));
  witness->add_option("--levels", wa.levels, "number of source radii used as levels");
  witness->callback([&] { action = [&] { apply_common(wa.common); return run_witness(wa); }; });

  OpennessArgs oa;
  auto* openness = app.add_subcommand("openness", "coarse-openness feasibility over a suite of sets and rho");
  add_common(openness, oa.common);
  openness->add_option("--map", oa.map, "map JSON")->required();
  openness->add_option("--suite", oa.suite, "default or a suite JSON file");
  openness->add_option("--seed", oa.seed, "seed for hash-selected sets");
  openness->add_option("--radii", oa.radii, "comma-separated source radii (default: declared)");
  openness->callback([&] { action = [&] { apply_common(oa.common); return run_openness(oa); }; });

  QuotientArgs qa;
  auto* quotient = app.add_subcommand("quotient", "validate a finite group action and build its orbit space");
  add_common(quotient, qa.common);
  quotient->add_option("--space", qa.space, "space JSON (explicit actions)");
  quotient->add_option("--action", qa.action, "action JSON")->required();
  quotient->add_option("--radii", qa.radii, "comma-separated radii (default: declared)");
  quotient->add_option("--emit", qa.emit, "write the orbit space JSON here");
  quotient->callback([&] { action = [&] { apply_common(qa.common); return run_quotient(qa); }; });

  CorpusArgs ca;
  auto* corpus = app.add_subcommand("corpus", "built-in spaces, maps, families and actions");
  corpus->require_subcommand(1);
  auto* list = corpus->add_subcommand("list", "list corpus entries");
  list->add_option("--format", ca.common.format, "stdout format")->check(CLI::IsMember({"tsv", "json"}));
  list->callback([&] { action = [&] { return run_corpus_list(ca); }; });
  auto* emit = corpus->add_subcommand("emit", "write an entry as a space JSON document");
  emit->add_option("--name", ca.name, "entry name")->required();
  emit->add_option("--params", ca.params, "parameter overrides as a JSON object");
  emit->add_option("--out", ca.out, "output file (default: stdout)");
  emit->add_option("--cache", ca.common.cache, "directory for memoized truncations");
  emit->callback([&] { action = [&] { apply_common(ca.common); return run_corpus_emit(ca); }; });

  RaisingArgs ra;
  auto* raising = app.add_subcommand("check-raising", "check asdim Y <= asdim X + n - 1 on estimated intervals");
  add_common(raising, ra.common);
  raising->add_option("--X", ra.X, "source interval lo:hi or dim-control JSON")->required();
  raising->add_option("--Y", ra.Y, "target interval lo:hi or dim-control JSON")->required();
  raising->add_option("--n", ra.n, "n of the coarsely n-to-1 map")->required();
  raising->add_flag("--open", ra.open, "the map is coarsely open");
  raising->callback([&] { action = [&] { apply_common(ra.common); return run_raising(ra); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

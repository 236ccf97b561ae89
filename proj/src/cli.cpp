#include "fkdist/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include "fkdist/error.hpp"
#include "fkdist/probes.hpp"
#include "fkdist/pseudometrics.hpp"

namespace fkdist::cli {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) { throw ConfigError{field, message}; }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_count(std::uint64_t v) { return std::to_string(v); }

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
  if (ec != std::errc{}) return "nan";
  std::string s(buf, end);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

double parse_real(std::string_view text, const std::string& field) {
  const std::string t = trim(text);
  if (t == "golden") return kGolden;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || end != t.data() + t.size() || !std::isfinite(value)) {
    fail(field, "expected a decimal number, got '" + t + "'");
  }
  return value;
}

std::vector<double> parse_real_list(std::string_view text, const std::string& field) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_real(part, field));
  return values;
}

std::vector<std::size_t> parse_count_list(std::string_view text, const std::string& field) {
  std::vector<std::size_t> values;
  for (const auto& part : split(text, ',')) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || end != part.data() + part.size() || v == 0) {
      fail(field, "expected positive integers, got '" + part + "'");
    }
    values.push_back(v);
  }
  return values;
}

Word parse_word(std::string_view text, const std::string& field) {
  Word w;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      w.push_back(static_cast<Symbol>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      w.push_back(static_cast<Symbol>(10 + (c - 'a')));
    } else {
      fail(field, std::string("unsupported symbol '") + c + "' (use 0-9, a-z)");
    }
  }
  if (w.empty()) fail(field, "word must be nonempty");
  return w;
}

namespace {

struct KeyValues {
  std::vector<std::pair<std::string, std::string>> items;

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : items) {
      if (k == key) return v;
    }
    return std::nullopt;
  }
};

KeyValues parse_key_values(std::string_view args, const std::vector<std::string>& allowed, const std::string& field) {
  KeyValues kv;
  if (trim(args).empty()) return kv;
  for (const auto& item : split(args, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(field, "expected key=value, got '" + item + "'");
    std::string key = trim(std::string_view(item).substr(0, eq));
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(field, "unknown parameter '" + key + "'");
    kv.items.emplace_back(std::move(key), trim(std::string_view(item).substr(eq + 1)));
  }
  return kv;
}

SubstitutionRules parse_rules(std::string_view args, const std::string& field) {
  SubstitutionRules rules;
  bool first = true;
  std::vector<std::pair<Symbol, Word>> parsed;
  Symbol top = 0;
  for (const auto& item : split(args, ',')) {
    const auto arrow = item.find('>');
    if (arrow == std::string::npos) fail(field, "expected rules like 0>01,1>10");
    const Word lhs = parse_word(std::string_view(item).substr(0, arrow), field);
    if (lhs.size() != 1) fail(field, "rule left-hand side must be one symbol");
    Word rhs = parse_word(std::string_view(item).substr(arrow + 1), field);
    if (first) rules.seed = lhs[0];
    first = false;
    top = std::max(top, lhs[0]);
    for (Symbol s : rhs) top = std::max(top, s);
    parsed.emplace_back(lhs[0], std::move(rhs));
  }
  rules.images.assign(static_cast<std::size_t>(top) + 1, Word{});
  for (auto& [s, image] : parsed) rules.images[s] = std::move(image);
  return rules;
}

}  // namespace

OrbitSource parse_system(std::string_view spec, const SystemOverrides& overrides, const std::string& field) {
  const std::string text = trim(spec);
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string() : text.substr(colon + 1);

  const auto pick = [&](const KeyValues& kv, const std::string& key, const std::optional<std::string>& flag,
                        const char* fallback) -> std::string {
    if (flag) return *flag;
    if (auto v = kv.get(key)) return *v;
    if (fallback == nullptr) fail(field, name + " requires " + key);
    return fallback;
  };

  try {
    if (name == "thue-morse" || name == "morse") return OrbitSource::thue_morse();
    if (name == "fibonacci") return OrbitSource::fibonacci();
    if (name == "chacon") return OrbitSource::chacon();
    if (name == "substitution") return OrbitSource::substitution(parse_rules(args, field));
    if (name == "periodic") return OrbitSource::periodic(parse_word(args, field));
    if (name == "explicit") return OrbitSource::explicit_word(parse_word(args, field));
    if (name == "sturmian") {
      const auto kv = parse_key_values(args, {"alpha", "beta"}, field);
      const double alpha = parse_real(pick(kv, "alpha", overrides.alpha, "golden"), field);
      const double beta = parse_real(pick(kv, "beta", overrides.beta, "0"), field);
      if (!(alpha > 0.0 && alpha < 1.0)) fail(field, "sturmian alpha must lie in (0, 1)");
      if (!(beta >= 0.0 && beta < 1.0)) fail(field, "sturmian beta must lie in [0, 1)");
      return OrbitSource::sturmian(alpha, beta);
    }
    if (name == "bernoulli") {
      const auto kv = parse_key_values(args, {"p", "seed"}, field);
      const double p = parse_real(pick(kv, "p", overrides.p, "0.5"), field);
      if (!(p >= 0.0 && p <= 1.0)) fail(field, "bernoulli p must lie in [0, 1]");
      std::uint64_t seed = 0;
      if (overrides.seed) {
        seed = *overrides.seed;
      } else if (auto s = kv.get("seed")) {
        const auto [end, ec] = std::from_chars(s->data(), s->data() + s->size(), seed);
        if (ec != std::errc{} || end != s->data() + s->size()) fail(field, "bernoulli seed must be an integer");
      }
      return OrbitSource::bernoulli(seed, p);
    }
    if (name == "rotation") {
      const auto kv = parse_key_values(args, {"alpha", "theta"}, field);
      const double alpha = parse_real(pick(kv, "alpha", overrides.alpha, "golden"), field);
      const double theta = parse_real(pick(kv, "theta", overrides.theta, "0"), field);
      if (!(theta >= 0.0 && theta < 1.0)) fail(field, "rotation theta must lie in [0, 1)");
      return OrbitSource::rotation(alpha, theta);
    }
  } catch (const Error& e) {
    fail(field, e.what());
  }
  fail(field, "unknown system '" + name + "'");
}

OrbitSource parse_companion(std::string_view spec, const OrbitSource& primary, const std::string& field) {
  const std::string text = trim(spec);
  if (text.rfind("shift:", 0) == 0) {
    const std::string count = text.substr(6);
    std::uint64_t k = 0;
    const auto [end, ec] = std::from_chars(count.data(), count.data() + count.size(), k);
    if (count.empty() || ec != std::errc{} || end != count.data() + count.size()) {
      fail(field, "expected shift:<non-negative integer>");
    }
    return primary.shifted(k);
  }
  OrbitSource other = parse_system(text, {}, field);
  if (other.is_symbolic() != primary.is_symbolic()) fail(field, "cannot compare symbolic and geometric systems");
  return other;
}

// ---------------------------------------------------------------------------

namespace {

struct Table {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render(const Table& table, char sep) {
  std::ostringstream os;
  os << "# fkdist " << kToolVersion << '\n';
  os << "# rng " << kRngVersion << '\n';
  for (const auto& [key, value] : table.config) os << "# " << key << '=' << value << '\n';
  for (const auto& note : table.notes) os << "# note: " << note << '\n';
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? std::string(1, sep) : std::string()) << cells[i];
    os << '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
  return os.str();
}

struct Options {
  std::string output;
  std::string format = "csv";
  std::string system;
  std::string vs;
  SystemOverrides overrides;
  std::string a;
  std::string b;
  std::size_t n = 0;
  std::string schedule;
  std::string grid_step = "0.015625";
  std::string grid;
  std::uint64_t seed = 0;
  std::size_t pairs = 16;
  bool per_pair = false;
  std::string eps;
  std::string ball = "0.0625,0.0009765625,0.00000095367431640625";
  std::size_t centers = 3;
  std::size_t samples = 0;
  std::string cuts;
};

double resolve_grid_step(const Options& o) {
  const double step = parse_real(o.grid_step, "--grid-step");
  if (!(step > 0.0 && step <= 1.0)) fail("--grid-step", "must lie in (0, 1], got " + o.grid_step);
  return step;
}

std::vector<std::size_t> resolve_schedule(const Options& o, std::size_t default_n) {
  if (!o.schedule.empty()) {
    auto schedule = parse_count_list(o.schedule, "--schedule");
    for (std::size_t k = 1; k < schedule.size(); ++k) {
      if (schedule[k] <= schedule[k - 1]) fail("--schedule", "horizons must strictly increase");
    }
    return schedule;
  }
  const std::size_t n = o.n == 0 ? default_n : o.n;
  return {n};
}

std::string join_counts(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_count(v[i]);
  return s;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
  return s;
}

OrbitSource resolve_system(const Options& o) {
  if (o.system.empty()) fail("--system", "required");
  return parse_system(o.system, o.overrides, "--system");
}

Table cmd_fbar(const Options& o, double& value) {
  if (o.a.empty()) fail("--a", "required");
  if (o.b.empty()) fail("--b", "required");
  if (o.a.size() != o.b.size()) fail("--b", "words must have equal length");
  const auto bytes = [](const std::string& text) {
    Word word;
    for (unsigned char c : text) word.push_back(c);
    return word;
  };
  const Word u = bytes(o.a);
  const Word w = bytes(o.b);
  value = fbar_word(u, w);
  Table t;
  t.config = {{"command", "fbar"}, {"a", o.a}, {"b", o.b}};
  t.columns = {"n", "fbar"};
  t.rows.push_back({format_count(u.size()), format_real(value)});
  return t;
}

Table cmd_dist(const Options& o) {
  const OrbitSource x = resolve_system(o);
  if (o.vs.empty()) fail("--vs", "required");
  const OrbitSource z = parse_companion(o.vs, x, "--vs");
  const auto schedule = resolve_schedule(o, 1024);
  const double step = resolve_grid_step(o);

  Table t;
  t.config = {{"command", "dist"},          {"system", x.describe()}, {"vs", z.describe()},
              {"schedule", join_counts(schedule)}, {"grid_step", format_real(step)}};
  t.columns = {"pair_id", "n", "rho_fk", "rho_b", "rho_b_prime"};
  for (std::size_t n : schedule) {
    const auto fk = rho_fk_estimate(x, z, n, step);
    const auto b = rho_b_estimate(x, z, n);
    const auto bp = rho_b_prime_estimate(x, z, n, step);
    t.rows.push_back({"0", format_count(n), format_real(fk.value), format_real(b.value), format_real(bp.value)});
  }
  return t;
}

Table cmd_profile(const Options& o) {
  const OrbitSource x = resolve_system(o);
  if (o.vs.empty()) fail("--vs", "required");
  const OrbitSource z = parse_companion(o.vs, x, "--vs");
  const std::size_t n = o.n == 0 ? 1024 : o.n;
  std::vector<double> grid;
  std::string grid_desc;
  if (!o.grid.empty()) {
    grid = parse_real_list(o.grid, "--grid");
    if (!(grid.front() > 0.0)) fail("--grid", "values must be positive");
    for (std::size_t k = 1; k < grid.size(); ++k) {
      if (!(grid[k] > grid[k - 1])) fail("--grid", "values must strictly increase");
    }
    grid_desc = join_reals(grid);
  } else {
    const double step = resolve_grid_step(o);
    const DeltaGrid lattice(step, x.diameter());
    grid.assign(lattice.points().begin(), lattice.points().end() - 1);
    if (grid.empty()) grid.push_back(lattice.sentinel());
    grid_desc = "lattice:" + format_real(step);
  }
  const DeltaProfile profile = delta_profile(x, z, n, grid);
  Table t;
  t.config = {{"command", "profile"}, {"system", x.describe()}, {"vs", z.describe()}, {"n", format_count(n)},
              {"grid", grid_desc}};
  t.columns = {"delta", "fbar"};
  for (std::size_t k = 0; k < profile.grid.size(); ++k) {
    t.rows.push_back({format_real(profile.grid[k]), format_real(profile.values[k])});
  }
  return t;
}

Table cmd_tlk(const Options& o) {
  const OrbitSource system = resolve_system(o);
  std::vector<std::size_t> schedule = o.schedule.empty() ? doubling_schedule(1024, 32768)
                                                         : resolve_schedule(o, 1024);
  const double step = resolve_grid_step(o);
  if (o.pairs == 0) fail("--pairs", "must be at least 1");
  const ProbeReport report = tlk_probe(system, schedule, o.pairs, o.seed, step);
  Table t;
  t.config = {{"command", "tlk-probe"},
              {"system", system.describe()},
              {"schedule", join_counts(schedule)},
              {"pairs", format_count(o.pairs)},
              {"seed", format_count(o.seed)},
              {"grid_step", format_real(step)}};
  t.notes = {"generic-orbit sampling; even pairs shifted, odd pairs independent; values are evidence, not proof"};
  if (o.per_pair) {
    t.config.emplace_back("rows", "per-pair");
    t.columns = {"n", "pair_id", "x_offset", "z_offset", "rho_fk"};
    for (std::size_t h = 0; h < report.schedule.size(); ++h) {
      for (std::size_t p = 0; p < report.pair_count; ++p) {
        t.rows.push_back({format_count(report.schedule[h]), format_count(p),
                          format_count(report.pairs[p].x.offset()), format_count(report.pairs[p].z.offset()),
                          format_real(report.estimates[h][p])});
      }
    }
    return t;
  }
  t.columns = {"n", "max", "median", "min", "pairs", "seed"};
  for (const auto& h : report.per_horizon) {
    t.rows.push_back({format_count(h.n), format_real(h.max), format_real(h.median), format_real(h.min),
                      format_count(report.pair_count), format_count(report.seed)});
  }
  return t;
}

Table cmd_sensitivity(const Options& o) {
  const OrbitSource system = resolve_system(o);
  SensitivityConfig config;
  config.eps_grid = parse_real_list(o.eps.empty() ? "0.1" : o.eps, "--eps");
  for (double e : config.eps_grid) {
    if (!(e > 0.0)) fail("--eps", "values must be positive");
  }
  config.ball_grid = parse_real_list(o.ball, "--ball");
  for (double r : config.ball_grid) {
    if (!(r > 0.0) || r > system.diameter()) fail("--ball", "radii must lie in (0, diameter]");
  }
  if (o.centers == 0) fail("--centers", "must be at least 1");
  config.centers = o.centers;
  config.samples_per_ball = o.samples == 0 ? 4 : o.samples;
  if (config.samples_per_ball < 2) fail("--samples", "must be at least 2");
  config.n = o.n == 0 ? 4096 : o.n;
  config.seed = o.seed;
  config.grid_step = resolve_grid_step(o);

  const auto verdicts = sensitivity_scan(system, config);
  Table t;
  t.config = {{"command", "sensitivity"},
              {"system", system.describe()},
              {"eps", join_reals(config.eps_grid)},
              {"ball", join_reals(config.ball_grid)},
              {"centers", format_count(config.centers)},
              {"samples", format_count(config.samples_per_ball)},
              {"n", format_count(config.n)},
              {"seed", format_count(config.seed)},
              {"grid_step", format_real(config.grid_step)}};
  t.notes = {"verdicts are evidence from finite sampling, not proofs"};
  t.columns = {"eps", "verdict", "min_ball_sup", "max_ball_sup"};
  for (const auto& v : verdicts) {
    t.rows.push_back({format_real(v.eps), to_string(v.verdict), format_real(v.min_ball_sup), format_real(v.max_ball_sup)});
  }
  return t;
}

Table cmd_katok(const Options& o) {
  const OrbitSource system = resolve_system(o);
  const std::size_t n = o.n == 0 ? 2048 : o.n;
  const double eps = parse_real(o.eps.empty() ? "0.1" : o.eps, "--eps");
  if (!(eps > 0.0)) fail("--eps", "must be positive");
  const std::size_t samples = o.samples == 0 ? 200 : o.samples;
  if (samples < 2) fail("--samples", "must be at least 2");
  PartitionSpec partition;
  if (!o.cuts.empty()) {
    if (system.is_symbolic()) fail("--cuts", "arc partitions apply to rotations only");
    partition.cuts = parse_real_list(o.cuts, "--cuts");
    for (std::size_t k = 0; k < partition.cuts.size(); ++k) {
      const double c = partition.cuts[k];
      if (!(c > 0.0 && c < 1.0) || (k > 0 && !(c > partition.cuts[k - 1]))) {
        fail("--cuts", "cuts must strictly increase inside (0, 1)");
      }
    }
  }
  const KatokResult result = katok_check(system, partition, n, eps, samples, o.seed);
  Table t;
  t.config = {{"command", "katok"},  {"system", system.describe()},    {"partition", partition.id()},
              {"n", format_count(n)}, {"eps", format_real(eps)},        {"samples", format_count(samples)},
              {"seed", format_count(o.seed)}};
  t.notes = {"generic-orbit sampling; best sampled word used as center"};
  t.columns = {"n", "eps", "samples", "fraction", "center_offset"};
  t.rows.push_back({format_count(n), format_real(eps), format_count(samples), format_real(result.fraction),
                    format_count(result.offsets[result.center])});
  return t;
}

std::optional<std::filesystem::path> resolve_output(const Options& o, const std::string& command) {
  const char* env = std::getenv(kOutputDirEnv);
  const std::string ext = o.format == "tsv" ? ".tsv" : ".csv";
  if (o.output.empty()) {
    if (env == nullptr || *env == '\0') return std::nullopt;
    return std::filesystem::path(env) / (command + ext);
  }
  std::filesystem::path p(o.output);
  if (p.is_relative() && env != nullptr && *env != '\0') p = std::filesystem::path(env) / p;
  return p;
}

// Writes to a sibling temporary file and renames it over the target.
bool write_atomically(const std::filesystem::path& path, const std::string& content, std::string& reason) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      reason = "cannot open " + tmp.string();
      return false;
    }
    f << content;
    f.flush();
    if (!f) {
      reason = "write failed for " + tmp.string();
      return false;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    reason = "cannot move output into place at " + path.string();
    return false;
  }
  return true;
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--output,-o", o.output, "Output file (relative paths resolve against $FKDIST_OUTPUT_DIR)");
  sub->add_option("--format", o.format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
}

void add_system_options(CLI::App* sub, Options& o) {
  sub->add_option("--system", o.system, "System spec, e.g. sturmian, thue-morse, periodic:01, bernoulli:p=0.5");
  sub->add_option("--alpha", o.overrides.alpha, "Rotation number (decimal or 'golden')");
  sub->add_option("--beta", o.overrides.beta, "Sturmian intercept");
  sub->add_option("--p", o.overrides.p, "Bernoulli success probability");
  sub->add_option("--theta", o.overrides.theta, "Rotation initial point");
  sub->add_option("--system-seed", o.overrides.seed, "Bernoulli generator seed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fkdist: Feldman-Katok and Besicovitch pseudometrics at finite horizon"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string("fkdist ") + kToolVersion);
  Options o;

  auto* fbar = app.add_subcommand("fbar", "Edit distance between two equal-length words");
  fbar->add_option("--a", o.a, "First word");
  fbar->add_option("--b", o.b, "Second word");
  add_output_options(fbar, o);

  auto* dist = app.add_subcommand("dist", "rho_FK, rho_B and rho_B' estimates for one pair");
  add_system_options(dist, o);
  dist->add_option("--vs", o.vs, "Second point: shift:k or a system spec");
  dist->add_option("--n", o.n, "Horizon");
  dist->add_option("--schedule", o.schedule, "Comma-separated horizons");
  dist->add_option("--grid-step", o.grid_step, "Delta lattice step");
  add_output_options(dist, o);

  auto* profile = app.add_subcommand("profile", "delta -> f_{n,delta} table for one pair");
  add_system_options(profile, o);
  profile->add_option("--vs", o.vs, "Second point: shift:k or a system spec");
  profile->add_option("--n", o.n, "Horizon");
  profile->add_option("--grid-step", o.grid_step, "Delta lattice step");
  profile->add_option("--grid", o.grid, "Explicit comma-separated delta grid");
  add_output_options(profile, o);

  auto* tlk = app.add_subcommand("tlk-probe", "Pairwise FK estimates along a horizon schedule");
  add_system_options(tlk, o);
  tlk->add_option("--schedule", o.schedule, "Comma-separated horizons");
  tlk->add_option("--pairs", o.pairs, "Number of sampled pairs");
  tlk->add_option("--seed", o.seed, "Sampling seed");
  tlk->add_option("--grid-step", o.grid_step, "Delta lattice step");
  tlk->add_flag("--per-pair", o.per_pair, "One row per (horizon, pair) instead of summaries");
  add_output_options(tlk, o);

  auto* sens = app.add_subcommand("sensitivity", "FK-sensitivity scan over sampled balls");
  add_system_options(sens, o);
  sens->add_option("--eps", o.eps, "Comma-separated epsilon grid");
  sens->add_option("--ball", o.ball, "Comma-separated ball radii");
  sens->add_option("--centers", o.centers, "Number of ball centers");
  sens->add_option("--samples", o.samples, "Samples per ball");
  sens->add_option("--n", o.n, "Horizon");
  sens->add_option("--seed", o.seed, "Sampling seed");
  sens->add_option("--grid-step", o.grid_step, "Delta lattice step");
  add_output_options(sens, o);

  auto* katok = app.add_subcommand("katok", "Sampling form of Katok's criterion");
  add_system_options(katok, o);
  katok->add_option("--n", o.n, "Word length");
  katok->add_option("--eps", o.eps, "Epsilon");
  katok->add_option("--samples", o.samples, "Number of sampled words");
  katok->add_option("--seed", o.seed, "Sampling seed");
  katok->add_option("--cuts", o.cuts, "Arc partition cut points (rotations)");
  add_output_options(katok, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << "fkdist " << kToolVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Table table;
  double fbar_value = 0.0;
  try {
    if (command == "fbar") {
      table = cmd_fbar(o, fbar_value);
    } else if (command == "dist") {
      table = cmd_dist(o);
    } else if (command == "profile") {
      table = cmd_profile(o);
    } else if (command == "tlk-probe") {
      table = cmd_tlk(o);
    } else if (command == "sensitivity") {
      table = cmd_sensitivity(o);
    } else {
      table = cmd_katok(o);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.field << ": " << e.message << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << command << ": " << e.what() << '\n';
    return kConfigError;
  }

  table.config.emplace_back("format", o.format);
  const std::string text = render(table, o.format == "tsv" ? '\t' : ',');
  const auto path = resolve_output(o, command);
  if (command == "fbar") out << format_real(fbar_value) << '\n';
  if (!path) {
    if (command != "fbar") out << text;
    return kSuccess;
  }
  std::string reason;
  if (!write_atomically(*path, text, reason)) {
    err << "error: output: " << reason << '\n';
    return kIoError;
  }
  return kSuccess;
}

}  // namespace fkdist::cli

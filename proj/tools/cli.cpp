#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "rauzy/codec.hpp"
#include "rauzy/digitseq.hpp"
#include "rauzy/error.hpp"
#include "rauzy/generators.hpp"
#include "rauzy/measures.hpp"
#include "rauzy/predictor.hpp"
#include "rauzy/rng.hpp"
#include "rauzy/serialize.hpp"

#ifndef RAUZY_VERSION
#define RAUZY_VERSION "0.0.0"
#endif

namespace rauzy::cli {

using nlohmann::json;

namespace {

// ---- small helpers --------------------------------------------------------

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json manifest(const std::string& command, json params) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "run_manifest"},
          {"command", command},
          {"tool_version", RAUZY_VERSION},
          {"generator", std::string(kGeneratorId)},
          {"params", std::move(params)},
          {"inputs", json::array()},
          {"outputs", json::array()}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::uint64_t to_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw DomainError(std::string(what) + ": not an integer: '" + s + "'");
  return v;
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError(std::string(what) + ": not a number: '" + s + "'");
  }
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
  std::vector<double> v;
  for (const auto& part : split(s, ',')) v.push_back(to_double(part, what));
  return v;
}

std::vector<std::size_t> parse_grid(const std::string& spec, std::size_t usable) {
  if (spec.empty() || spec == "auto") return default_grid(usable);
  if (spec.rfind("pow2:", 0) == 0) return default_grid(usable, to_u64(spec.substr(5), "--grid"));
  std::vector<std::size_t> grid;
  for (const auto& part : split(spec, ',')) grid.push_back(to_u64(part, "--grid"));
  return grid;
}

json classification_json(const Classification& c) {
  static const std::map<NoiseClass, const char*> names = {{NoiseClass::NormalLike, "NormalLike"},
                                                          {NoiseClass::PreservingLike, "PreservingLike"},
                                                          {NoiseClass::Intermediate, "Intermediate"}};
  return {{"kind", names.at(c.kind)}, {"s_low", c.s_low}, {"s_high", c.s_high}};
}

/// Either "uniform", "zero" or a digit file path.
DigitSeq source_seq(const std::string& spec, unsigned base, std::size_t n, std::uint64_t seed, json& m) {
  if (spec == "uniform") return uniform_random(base, n, seed);
  if (spec == "zero") return DigitSeq(base, std::vector<Digit>(n, 0));
  m["inputs"].push_back({{"path", spec}, {"sha256", sha256_file(spec)}});
  return read_digits(spec, base);
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  unsigned base = 0;
  unsigned ell_max = 8;
  std::string grid = "auto";
  std::string orientation = "predict-previous";
  double tol = 0.01;
  double tail_fraction = 0.5;
  unsigned threads = 1;
  std::string out_prefix;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto o = parse_orientation(a.orientation);
  const auto digest = sha256_file(a.input);
  const DigitSeq x = a.base ? read_digits(a.input, a.base) : read_digits(a.input);

  ProfileOptions opts;
  opts.ell_max = a.ell_max;
  opts.orientation = o;
  opts.tail_fraction = a.tail_fraction;
  opts.threads = a.threads;
  if (x.size() <= a.ell_max) throw DomainError("input has " + std::to_string(x.size()) + " digits, need more than ell_max");
  opts.grid = parse_grid(a.grid, x.size());
  const auto profile = noise_profile(x, opts);
  const auto cls = classify(profile, a.tol);

  const std::string prefix = a.out_prefix.empty() ? a.input : a.out_prefix;
  json source = {{"input_sha256", digest}, {"digits", x.size()}, {"tol", a.tol}, {"classification", classification_json(cls)}};
  write_text(prefix + ".csv", profile_csv(profile));
  write_text(prefix + ".json", dump(profile_json(profile, source)));

  json m = manifest("analyze", {{"base", x.base()},
                                {"ell_max", a.ell_max},
                                {"grid", opts.grid},
                                {"orientation", to_string(o)},
                                {"tol", a.tol},
                                {"tail_fraction", a.tail_fraction},
                                {"threads", a.threads}});
  m["inputs"].push_back({{"path", a.input}, {"sha256", digest}});
  m["outputs"] = {prefix + ".csv", prefix + ".json"};
  write_text(prefix + ".manifest.json", dump(m));

  out << to_string(cls) << "\n";
  return kOk;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  unsigned base = 2;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string output;
  // bernoulli
  std::string probs;
  std::optional<double> s;
  // markov
  std::string spec_path;
  // rational
  std::string value;
  // interleave
  std::string set = "evens";
  std::string x = "uniform";
  std::string y = "zero";
  // block-concat
  unsigned j_max = 4;
  std::vector<std::string> ones;
  // rauzy-codec
  unsigned k = 5;
  std::optional<std::uint64_t> ell;
  std::size_t blocks = 100;
};

PositionSet parse_set(const std::string& spec) {
  if (spec == "all") return PositionSet::all();
  if (spec == "none") return PositionSet::none();
  if (spec == "evens") return PositionSet::evens();
  if (spec.rfind("mask:", 0) == 0) {
    PeriodicMask m;
    for (char c : spec.substr(5)) {
      if (c != '0' && c != '1') throw DomainError("--set mask: expected 0/1 characters");
      m.mask.push_back(c == '1');
    }
    if (m.mask.empty()) throw DomainError("--set mask: empty mask");
    return PositionSet(std::move(m));
  }
  if (spec.rfind("parts:", 0) == 0) {
    // parts:IMAX:i,j,...
    const auto fields = split(spec.substr(6), ':');
    if (fields.size() != 2) throw DomainError("--set parts: expected parts:IMAX:i,j,...");
    ProgressionUnion u{progression_partition(static_cast<unsigned>(to_u64(fields[0], "--set"))), {}};
    for (const auto& i : split(fields[1], ',')) u.selected.push_back(to_u64(i, "--set"));
    return PositionSet(std::move(u));
  }
  throw DomainError("--set: unknown set '" + spec + "'");
}

json codec_report(const CodecParams& params, const DigitSeq& v, const DigitSeq& u, std::size_t blocks) {
  const auto errors = verify_block_errors(v, params, blocks);
  std::map<unsigned, std::size_t> hist;
  for (unsigned e : errors) ++hist[e];
  json h = json::object();
  for (auto [e, count] : hist) h[std::to_string(e)] = count;
  const auto beta_v = codec_beta(v, params);
  const std::size_t w = params.w;
  const auto beta_u = beta_ell(u, static_cast<unsigned>(std::min<std::size_t>(w, 16)), u.size(), Orientation::PredictNext);
  return {{"params", to_json(params)},
          {"blocks", blocks},
          {"max_block_errors", errors.empty() ? 0u : *std::max_element(errors.begin(), errors.end())},
          {"error_histogram", h},
          {"beta_E_v", {{"mismatches", beta_v.mismatches}, {"scored", beta_v.scored}, {"value", beta_v.value()}}},
          {"beta_payload_track", {{"ell", std::min<std::size_t>(w, 16)}, {"value", beta_u.ratio.value()}}},
          {"payload_density_bound", params.density() * (params.base - 1) / params.base}};
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  static const std::vector<std::string> random_kinds = {"bernoulli", "markov", "uniform", "interleave",
                                                        "block-concat", "rauzy-codec"};
  const bool random = std::find(random_kinds.begin(), random_kinds.end(), a.kind) != random_kinds.end();
  if (random && !a.seed) throw DomainError("generate " + a.kind + " requires --seed");
  const std::uint64_t seed = a.seed.value_or(0);

  json params = {{"kind", a.kind}, {"base", a.base}, {"n", a.n}};
  if (a.seed) params["seed"] = *a.seed;
  json m;
  std::optional<DigitSeq> seq;
  json extra;

  if (a.kind == "uniform") {
    m = manifest("generate", params);
    seq = uniform_random(a.base, a.n, seed);
  } else if (a.kind == "champernowne") {
    m = manifest("generate", params);
    seq = champernowne(a.base, a.n);
  } else if (a.kind == "rational") {
    const auto pq = split(a.value, '/');
    if (pq.size() != 2) throw DomainError("--value must look like p/q");
    params["value"] = a.value;
    m = manifest("generate", params);
    seq = expand_rational(to_u64(pq[0], "--value"), to_u64(pq[1], "--value"), a.base, a.n);
  } else if (a.kind == "bernoulli") {
    ProbVector pv;
    if (a.s) {
      pv = bernoulli_opt(a.base, *a.s).pv;
      params["s"] = *a.s;
    } else {
      if (a.probs.empty()) throw DomainError("bernoulli needs --p or --s");
      pv = make_prob_vector(parse_doubles(a.probs, "--p"));
      if (pv.base != a.base) throw DomainError("--p has " + std::to_string(pv.base) + " entries but --base is " + std::to_string(a.base));
    }
    params["p"] = pv.p;
    m = manifest("generate", params);
    seq = bernoulli_seq(pv, a.n, seed);
  } else if (a.kind == "markov") {
    if (a.spec_path.empty()) throw DomainError("markov needs --spec");
    std::ifstream f(a.spec_path);
    if (!f) throw ParseError("cannot open " + a.spec_path);
    json doc;
    try {
      doc = json::parse(f);
    } catch (const json::exception& e) {
      throw ParseError(a.spec_path + ": " + e.what());
    }
    const auto spec = markov_spec_from_json(doc);
    params["base"] = spec.base;
    m = manifest("generate", params);
    m["inputs"].push_back({{"path", a.spec_path}, {"sha256", sha256_file(a.spec_path)}});
    seq = markov_seq(spec, a.n, seed);
  } else if (a.kind == "interleave") {
    params["set"] = a.set;
    params["x"] = a.x;
    params["y"] = a.y;
    params["x_seed"] = mix_seed(seed, 1);
    params["y_seed"] = mix_seed(seed, 2);
    m = manifest("generate", params);
    const auto set = parse_set(a.set);
    const DigitSeq x = source_seq(a.x, a.base, a.n, mix_seed(seed, 1), m);
    const DigitSeq y = source_seq(a.y, a.base, a.n, mix_seed(seed, 2), m);
    seq = interleave(set, x, y, a.n);
  } else if (a.kind == "block-concat") {
    if (!a.s) throw DomainError("block-concat needs --s");
    IndicatorTable table(a.j_max + 2, a.j_max + 1);
    for (const auto& cell : a.ones) {
      const auto ij = split(cell, ',');
      if (ij.size() != 2) throw DomainError("--one expects i,j");
      const auto i = to_u64(ij[0], "--one");
      const auto j = to_u64(ij[1], "--one");
      if (i >= table.rows() || j >= table.cols()) throw DomainError("--one " + cell + " is outside the table");
      table.set(i, j);
    }
    params["s"] = *a.s;
    params["j_max"] = a.j_max;
    params["ones"] = a.ones;
    const auto r = block_concat(table, *a.s, a.base, a.j_max, seed);
    params["block_seeds"] = std::vector<std::uint64_t>(r.seeds.begin() + 1, r.seeds.end());
    m = manifest("generate", params);
    extra = {{"schedule", r.schedule.a}, {"m", std::vector<unsigned>(r.m.begin() + 1, r.m.end())}};
    seq = a.n ? r.digits.prefix(a.n) : r.digits;
  } else if (a.kind == "rauzy-codec") {
    const auto cp = CodecParams::make(a.base, a.k, a.ell);
    params["k"] = a.k;
    params["ell"] = cp.ell;
    params["blocks"] = a.blocks;
    m = manifest("generate", params);
    const DigitSeq payload = uniform_random(a.base, a.blocks * a.k, seed);
    const DigitSeq u = payload_track(payload, cp, a.blocks);
    seq = build_v(u, cp, a.blocks);
    extra = codec_report(cp, *seq, u, a.blocks);
  } else {
    throw DomainError("unknown --kind '" + a.kind + "'");
  }

  write_digits(*seq, a.output);
  m["outputs"] = {a.output, a.output + ".meta.json"};
  m["digits"] = seq->size();
  m["output_sha256"] = sha256_file(a.output);
  if (!extra.is_null()) m["report"] = extra;
  write_text(a.output + ".meta.json", dump(m));
  out << "wrote " << seq->size() << " digits to " << a.output << "\n";
  if (a.kind == "rauzy-codec") {
    out << "max errors per block: " << extra["max_block_errors"].get<unsigned>() << "\n";
  }
  return kOk;
}

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  unsigned base = 2;
  std::size_t grid = 1000;
  std::string output = "bounds";
  bool plot = false;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const auto rows = dim_bounds_grid(a.base, a.grid);
  write_text(a.output + ".csv", bounds_csv(rows));
  write_text(a.output + ".json", dump(bounds_json(a.base, rows)));
  if (a.plot) write_text(a.output + ".svg", bounds_svg(a.base, rows));
  out << rows.size() << " rows written to " << a.output << ".csv\n";
  return kOk;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  unsigned base = 2;
  unsigned ell = 2;
  std::size_t length = 256;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::string orientation = "predict-previous";
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  if (!a.seed) throw DomainError("oracle requires --seed");
  const auto o = parse_orientation(a.orientation);
  std::size_t failures = 0;
  for (std::size_t t = 0; t < a.trials; ++t) {
    const auto x = uniform_random(a.base, a.length, mix_seed(*a.seed, t));
    const auto fast = beta_ell(x, a.ell, x.size(), o).ratio;
    const auto slow = beta_ell_bruteforce(x, a.ell, x.size(), o, a.cap);
    if (!(fast == slow)) {
      ++failures;
      out << "trial " << t << ": counts " << fast.mismatches << " vs " << slow.mismatches << "\n"
          << format_digits(x);
    }
  }
  out << (failures == 0 ? "PASS" : "FAIL") << " base=" << a.base << " ell=" << a.ell << " trials=" << a.trials
      << " failures=" << failures << "\n";
  return failures == 0 ? kOk : kCheckFailed;
}

// ---- measure --------------------------------------------------------------

struct MeasureArgs {
  std::string mode = "spec";
  std::string spec_path;
  unsigned base = 2;
  unsigned k = 1;
  double s = 0;
  std::size_t budget = 2000;
  double log_base = 0;  // 0: nats
};

int cmd_measure(const MeasureArgs& a, std::ostream& out) {
  const double scale = a.log_base > 0 ? std::log(a.log_base) : 1.0;
  if (a.log_base != 0 && !(a.log_base > 1)) throw DomainError("--log-base must be > 1");
  json doc = {{"schema_version", kSchemaVersion}, {"kind", "measure"}, {"mode", a.mode},
              {"entropy_unit", a.log_base > 0 ? "log base " + format_fixed(a.log_base) : "nats"}};
  if (a.mode == "spec") {
    if (a.spec_path.empty()) throw DomainError("measure spec needs --spec");
    std::ifstream f(a.spec_path);
    if (!f) throw ParseError("cannot open " + a.spec_path);
    json in;
    try {
      in = json::parse(f);
    } catch (const json::exception& e) {
      throw ParseError(a.spec_path + ": " + e.what());
    }
    const auto spec = markov_spec_from_json(in);
    doc["entropy"] = entropy(spec) / scale;
    doc["noise"] = measure_noise(spec);
  } else if (a.mode == "bernoulli-opt") {
    const auto r = bernoulli_opt(a.base, a.s);
    doc["s"] = a.s;
    doc["p"] = r.pv.p;
    doc["entropy"] = r.entropy / scale;
    doc["noise"] = measure_noise(bernoulli_spec(r.pv));
  } else if (a.mode == "search") {
    const auto r = markov_search(a.base, a.k, a.s, a.budget);
    doc["s"] = a.s;
    doc["entropy"] = r.entropy / scale;
    doc["noise"] = r.noise;
    doc["evaluations"] = r.evaluations;
    doc["spec"] = to_json(r.spec);
  } else {
    throw DomainError("unknown measure mode '" + a.mode + "'");
  }
  out << dump(doc);
  return kOk;
}

// ---- codec-verify ---------------------------------------------------------

struct VerifyArgs {
  std::string input;
  unsigned k = 5;
  std::optional<std::uint64_t> ell;
};

int cmd_codec_verify(const VerifyArgs& a, std::ostream& out) {
  const DigitSeq v = read_digits(a.input);
  const auto cp = CodecParams::make(v.base(), a.k, a.ell);
  const std::size_t blocks = v.size() / cp.block_len();
  if (blocks == 0) throw DomainError("input is shorter than one block");
  const auto errors = verify_block_errors(v, cp, blocks);
  const unsigned worst = *std::max_element(errors.begin(), errors.end());
  const auto beta = codec_beta(v, cp);
  out << "blocks=" << blocks << " max_errors=" << worst << " beta_E=" << format_fixed(beta.value()) << "\n";
  out << (worst <= 2 ? "PASS" : "FAIL") << "\n";
  return worst <= 2 ? kOk : kCheckFailed;
}

int dispatch(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"rauzy"};
  for (const auto& s : args) argv.push_back(s.c_str());

  AnalyzeArgs an;
  GenerateArgs ge;
  BoundsArgs bo;
  OracleArgs orc;
  MeasureArgs me;
  VerifyArgs ve;

  auto* analyze = app.add_subcommand("analyze", "Noise profile of a digit file");
  analyze->add_option("--input", an.input, "Digit file")->required();
  analyze->add_option("--base", an.base, "Expected base (checked against the header)");
  analyze->add_option("--ell-max", an.ell_max, "Largest predictor width")->capture_default_str();
  analyze->add_option("--grid", an.grid, "auto, pow2:START or a comma list of prefix lengths")->capture_default_str();
  analyze->add_option("--orientation", an.orientation, "predict-previous or predict-next")->capture_default_str();
  analyze->add_option("--tol", an.tol, "Classification tolerance")->capture_default_str();
  analyze->add_option("--tail-fraction", an.tail_fraction, "Share of grid points in the tail window")->capture_default_str();
  analyze->add_option("--threads", an.threads, "Counting threads")->capture_default_str();
  analyze->add_option("--out-prefix", an.out_prefix, "Output prefix (default: the input path)");

  auto* generate = app.add_subcommand("generate", "Write a digit file and its .meta.json sidecar");
  generate->add_option("--kind", ge.kind, "bernoulli|markov|champernowne|rational|uniform|interleave|block-concat|rauzy-codec")
      ->required();
  generate->add_option("--base", ge.base)->capture_default_str();
  generate->add_option("--n", ge.n, "Number of digits");
  generate->add_option("--seed", ge.seed);
  generate->add_option("--output", ge.output)->required();
  generate->add_option("--p", ge.probs, "Comma-separated digit law (bernoulli)");
  generate->add_option("--s", ge.s, "Target noise (bernoulli, block-concat)");
  generate->add_option("--spec", ge.spec_path, "Markov spec JSON");
  generate->add_option("--value", ge.value, "p/q (rational)");
  generate->add_option("--set", ge.set, "all|none|evens|mask:0110|parts:IMAX:i,j")->capture_default_str();
  generate->add_option("--x", ge.x, "Source on the set: uniform|zero|PATH")->capture_default_str();
  generate->add_option("--y", ge.y, "Source off the set: uniform|zero|PATH")->capture_default_str();
  generate->add_option("--j-max", ge.j_max)->capture_default_str();
  generate->add_option("--one", ge.ones, "Indicator cell i,j set to 1 (repeatable)");
  generate->add_option("--k", ge.k, "Payload digits per block")->capture_default_str();
  generate->add_option("--ell", ge.ell, "Codec gap length");
  generate->add_option("--blocks", ge.blocks)->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Dimension bound curves");
  bounds->add_option("--base", bo.base)->capture_default_str();
  bounds->add_option("--grid", bo.grid, "Number of grid intervals")->capture_default_str();
  bounds->add_option("--output", bo.output, "Output prefix")->capture_default_str();
  bounds->add_flag("--plot", bo.plot, "Also write an SVG chart");

  auto* oracle = app.add_subcommand("oracle", "Compare beta_ell with brute-force enumeration");
  oracle->add_option("--base", orc.base)->capture_default_str();
  oracle->add_option("--ell", orc.ell)->capture_default_str();
  oracle->add_option("--length", orc.length)->capture_default_str();
  oracle->add_option("--trials", orc.trials)->capture_default_str();
  oracle->add_option("--seed", orc.seed);
  oracle->add_option("--cap", orc.cap)->capture_default_str();
  oracle->add_option("--orientation", orc.orientation)->capture_default_str();

  auto* measure = app.add_subcommand("measure", "Entropy and noise of Markov measures");
  measure->add_option("mode", me.mode, "spec|bernoulli-opt|search")->capture_default_str();
  measure->add_option("--spec", me.spec_path);
  measure->add_option("--base", me.base)->capture_default_str();
  measure->add_option("--k", me.k)->capture_default_str();
  measure->add_option("--s", me.s);
  measure->add_option("--budget", me.budget)->capture_default_str();
  measure->add_option("--log-base", me.log_base, "Report entropy in this log base");

  auto* verify = app.add_subcommand("codec-verify", "Count predictor errors per codec block");
  verify->add_option("--input", ve.input)->required();
  verify->add_option("--k", ve.k)->capture_default_str();
  verify->add_option("--ell", ve.ell);

  app.require_subcommand(1);
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  if (analyze->parsed()) return cmd_analyze(an, out);
  if (generate->parsed()) return cmd_generate(ge, out);
  if (bounds->parsed()) return cmd_bounds(bo, out);
  if (oracle->parsed()) return cmd_oracle(orc, out);
  if (measure->parsed()) return cmd_measure(me, out);
  if (verify->parsed()) return cmd_codec_verify(ve, out);
  return kUsageError;
}

}  // namespace

std::string sha256_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (f) {
    f.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(f.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rauzy noise toolkit", "rauzy"};
  app.set_version_flag("--version", RAUZY_VERSION);
  try {
    return dispatch(app, args, out, err);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kUsageError;
  } catch (const LengthError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kUsageError;
  } catch (const AmbiguityError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace rauzy::cli

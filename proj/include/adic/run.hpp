#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adic/classify.hpp"
#include "adic/dimension.hpp"
#include "adic/spec_json.hpp"
#include "adic/stream_io.hpp"

namespace adic {

// Ladder request as given on the command line:
//   "auto"                      block boundaries when exposed, else geometric
//   "blocks"                    block boundaries (error when not exposed)
//   "geometric[:first[:ratio]]" geometric ladder
//   "explicit:n1,n2,..."        the listed positions
struct LadderChoice {
  enum class Kind { Auto, Blocks, Geometric, Explicit } kind = Kind::Auto;
  std::uint64_t first = 100;
  Rational ratio = Rational(3, 2);
  std::vector<std::uint64_t> positions;

  static LadderChoice parse(const std::string& text) {
    LadderChoice c;
    if (text.empty() || text == "auto") return c;
    if (text == "blocks") {
      c.kind = Kind::Blocks;
      return c;
    }
    if (text.rfind("geometric", 0) == 0) {
      c.kind = Kind::Geometric;
      std::stringstream ss(text);
      std::string part;
      std::getline(ss, part, ':');
      if (std::getline(ss, part, ':')) c.first = std::stoull(part);
      if (std::getline(ss, part, ':')) c.ratio = Rational::parse(part);
      return c;
    }
    if (text.rfind("explicit:", 0) == 0) {
      c.kind = Kind::Explicit;
      std::stringstream ss(text.substr(9));
      std::string part;
      while (std::getline(ss, part, ',')) c.positions.push_back(std::stoull(part));
      if (c.positions.empty()) throw SpecError("explicit ladder has no positions");
      return c;
    }
    throw SpecError("cannot parse ladder \"" + text + "\"");
  }
};

inline CheckpointLadder resolve_ladder(const LadderChoice& choice,
                                       const StreamFactory& factory,
                                       std::uint64_t horizon) {
  switch (choice.kind) {
    case LadderChoice::Kind::Explicit:
      return CheckpointLadder::merged(choice.positions, horizon);
    case LadderChoice::Kind::Geometric:
      return CheckpointLadder::geometric(horizon, choice.first, choice.ratio);
    case LadderChoice::Kind::Blocks:
    case LadderChoice::Kind::Auto: {
      DigitStream probe = factory();
      std::vector<std::uint64_t> positions;
      bool structured = false;
      probe.advance_to(horizon);
      if (const auto* b = probe.boundaries()) {
        structured = true;
        for (std::uint64_t pos : *b)
          if (pos >= 1 && pos <= horizon) positions.push_back(pos);
      }
      if (const auto* m = probe.switch_marks())
        for (std::uint64_t pos : *m)
          if (pos >= 1 && pos <= horizon) positions.push_back(pos);
      if (!structured) {
        if (choice.kind == LadderChoice::Kind::Blocks)
          throw SpecError("stream does not expose block boundaries");
        return CheckpointLadder::geometric(horizon);
      }
      return CheckpointLadder::merged(positions, horizon);
    }
  }
  throw SpecError("unresolved ladder choice");
}

enum class StreamFileFormat { Ascii, Packed };

inline StreamFileFormat parse_format(const std::string& text) {
  if (text == "ascii") return StreamFileFormat::Ascii;
  if (text == "packed") return StreamFileFormat::Packed;
  throw SpecError("unknown format \"" + text + "\" (expected ascii or packed)");
}

struct GenerateConfig {
  json spec_doc;
  std::string out_path;
  std::uint64_t horizon = 1000000;
  StreamFileFormat format = StreamFileFormat::Ascii;
  std::uint64_t seed = 1;
};

struct GenerateResult {
  std::uint64_t digits_written = 0;
  std::string meta_path;
  std::uint64_t stream_hash = 0;
};

// Writes `horizon` digits plus a sidecar <out>.meta.json echoing the
// effective config, the seed, and the materialized block structure.
inline GenerateResult run_generate(const GenerateConfig& cfg) {
  const ConstructionSpec spec = parse_construction(cfg.spec_doc, cfg.seed);
  DigitStream stream = spec.factory();
  std::vector<int> digits = stream.advance(cfg.horizon);

  std::string payload;
  if (cfg.format == StreamFileFormat::Ascii) {
    payload = to_ascii(digits);
    payload += '\n';
  } else {
    payload = pack_digits(digits, spec.radix);
  }
  write_file_bytes(cfg.out_path, payload);

  json meta;
  meta["config"] = spec.effective;
  meta["seed"] = cfg.seed;
  meta["format"] = cfg.format == StreamFileFormat::Ascii ? "ascii" : "packed";
  meta["digits"] = cfg.horizon;
  meta["stream_fnv1a"] = fnv1a(std::string_view(payload));
  if (const auto* b = stream.boundaries()) {
    std::vector<std::uint64_t> bounds;
    for (std::uint64_t pos : *b)
      if (pos >= 1 && pos <= cfg.horizon) bounds.push_back(pos);
    meta["block_boundaries"] = bounds;
  }
  if (const auto* m = stream.switch_marks()) {
    std::vector<std::uint64_t> marks;
    for (std::uint64_t pos : *m)
      if (pos >= 1 && pos <= cfg.horizon) marks.push_back(pos);
    meta["switch_points"] = marks;
  }
  GenerateResult result;
  result.digits_written = cfg.horizon;
  result.meta_path = cfg.out_path + ".meta.json";
  result.stream_hash = meta["stream_fnv1a"].get<std::uint64_t>();
  write_file_bytes(result.meta_path, meta.dump(2) + "\n");
  return result;
}

struct AnalyzeConfig {
  std::optional<json> spec_doc;       // exactly one of spec_doc / in_path
  std::optional<std::string> in_path;
  std::string out_path;               // empty = return CSV only
  std::uint64_t horizon = 1000000;
  LadderChoice ladder;
  std::uint64_t seed = 1;
  int radix = 4;
};

inline std::pair<StreamFactory, std::uint64_t> resolve_input(
    const AnalyzeConfig& cfg) {
  if (cfg.spec_doc && cfg.in_path)
    throw SpecError("give either a construction spec or an input file, not both");
  if (cfg.spec_doc) {
    const ConstructionSpec spec = parse_construction(*cfg.spec_doc, cfg.seed);
    return {spec.factory, cfg.horizon};
  }
  if (cfg.in_path) {
    const std::vector<int> digits = read_stream_file(*cfg.in_path, cfg.radix);
    if (digits.empty()) throw std::domain_error("empty digit stream: " + *cfg.in_path);
    const std::uint64_t horizon =
        std::min<std::uint64_t>(cfg.horizon, digits.size());
    Alphabet alphabet(cfg.radix);
    return {[digits, alphabet] { return literal_stream(digits, alphabet); }, horizon};
  }
  throw SpecError("no input: give a construction spec or an input file");
}

// CSV with exact rationals and 12-significant-digit decimals side by side.
inline std::string run_analyze(const AnalyzeConfig& cfg) {
  const auto [factory, horizon] = resolve_input(cfg);
  const CheckpointLadder ladder = resolve_ladder(cfg.ladder, factory, horizon);
  const std::vector<TrackRow> rows = track(factory, ladder);

  std::string csv = "n,N0,N1,N2,N3,v0,v1,v2,v3,r,v0_dec,v1_dec,v2_dec,v3_dec,r_dec\n";
  for (const TrackRow& row : rows) {
    csv += std::to_string(row.n);
    for (std::uint64_t c : row.counts) csv += ',' + std::to_string(c);
    for (const Rational& v : row.v) csv += ',' + v.str();
    csv += ',' + row.r.str();
    for (const Rational& v : row.v) csv += ',' + v.decimal();
    csv += ',' + row.r.decimal();
    csv += '\n';
  }
  if (!cfg.out_path.empty()) write_file_bytes(cfg.out_path, csv);
  return csv;
}

inline json series_verdict_json(const SeriesVerdict& v) {
  json out;
  out["status"] = v.oscillates() ? "oscillates" : "converges";
  out["lo"] = v.lo.str();
  out["hi"] = v.hi.str();
  out["estimate"] = v.estimate.str();
  out["band"] = v.band.str();
  return out;
}

struct ClassifyConfig {
  std::optional<json> spec_doc;
  std::optional<std::string> in_path;
  std::string out_path;
  std::uint64_t horizon = 1000000;
  LadderChoice ladder;
  Rational delta = Rational(1, 20);
  Rational tail_fraction = Rational(1, 2);
  std::uint64_t seed = 1;
  int radix = 4;
};

inline json run_classify(const ClassifyConfig& cfg) {
  AnalyzeConfig in;
  in.spec_doc = cfg.spec_doc;
  in.in_path = cfg.in_path;
  in.horizon = cfg.horizon;
  in.seed = cfg.seed;
  in.radix = cfg.radix;
  const auto [factory, horizon] = resolve_input(in);
  const CheckpointLadder ladder = resolve_ladder(cfg.ladder, factory, horizon);
  const ConvergenceVerdict verdict =
      classify(factory, horizon, ladder, cfg.delta, cfg.tail_fraction);

  json out;
  out["class_guess"] = to_string(verdict.guess);
  out["mean"] = series_verdict_json(verdict.mean);
  json digits = json::array();
  for (const auto& v : verdict.per_digit) digits.push_back(series_verdict_json(v));
  out["per_digit"] = digits;
  out["parameters"] = {{"delta", cfg.delta.str()},
                       {"tail_fraction", cfg.tail_fraction.str()},
                       {"horizon", horizon},
                       {"ladder", verdict.ladder}};
  const ConsistencyCheck check = count_consistency_check(verdict);
  out["count_identities"] = {{"pass", check.pass}, {"report", check.report}};
  if (!cfg.out_path.empty()) write_file_bytes(cfg.out_path, out.dump(2) + "\n");
  return out;
}

struct DimensionConfig {
  std::string mode;  // formula | crossover | box-count
  std::optional<StochasticVector> tau;
  int radix = 4;
  std::uint64_t k = 8;
  std::optional<json> spec_doc;          // box-count: sample from a spec...
  std::optional<std::string> points_path;  // ...or read points, one per line
  std::size_t samples = 10000;
  std::size_t depth = 12;
  std::size_t max_rank = 10;
  std::uint64_t seed = 1;
  std::string out_path;
};

inline json run_dimension(const DimensionConfig& cfg) {
  json out;
  if (cfg.mode == "formula") {
    if (!cfg.tau) throw SpecError("formula mode needs --tau");
    out["method"] = "formula";
    out["value"] = besicovitch_eggleston_dimension(*cfg.tau, cfg.radix);
    json tau = json::array();
    for (const Rational& e : cfg.tau->entries()) tau.push_back(e.str());
    out["tau"] = tau;
    out["radix"] = cfg.radix;
  } else if (cfg.mode == "crossover") {
    const Rational alpha0 = crossover_dimension({cfg.k});
    out["method"] = "crossover";
    out["k"] = cfg.k;
    out["value"] = alpha0.to_double();
    out["value_exact"] = alpha0.str();
  } else if (cfg.mode == "box-count") {
    std::vector<std::string> points;
    if (cfg.points_path) {
      std::stringstream ss(read_file_bytes(*cfg.points_path));
      std::string line;
      while (std::getline(ss, line))
        if (!line.empty()) points.push_back(line);
      for (const std::string& p : points) (void)parse_ascii(p, cfg.radix);
    } else if (cfg.spec_doc) {
      json doc = *cfg.spec_doc;
      auto variant = [&doc, &cfg](std::uint64_t i) {
        const ConstructionSpec spec =
            parse_construction(doc, cfg.seed ^ (i + 1) * 0x9e3779b97f4a7c15ull);
        return spec.factory();
      };
      points = sample_variant_points(variant, cfg.samples, cfg.depth);
    } else {
      points = sample_uniform_points(cfg.samples, cfg.depth, cfg.radix, cfg.seed);
    }
    const DimensionEstimate est =
        box_counting_estimate(points, cfg.max_rank, cfg.radix);
    out["method"] = "box-count";
    out["value"] = est.value;
    out["diagnostics"] = {{"ranks", est.ranks},
                          {"counts", est.counts},
                          {"residual", est.residual},
                          {"samples", est.sample_count}};
  } else {
    throw SpecError("unknown dimension mode \"" + cfg.mode +
                    "\" (expected formula, crossover or box-count)");
  }
  if (!cfg.out_path.empty()) write_file_bytes(cfg.out_path, out.dump(2) + "\n");
  return out;
}

}  // namespace adic

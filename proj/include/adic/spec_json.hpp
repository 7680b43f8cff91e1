#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "adic/blocks.hpp"
#include "adic/common.hpp"
#include "adic/digits.hpp"
#include "adic/epsilon_blocks.hpp"
#include "adic/rational.hpp"
#include "adic/schedule.hpp"
#include "adic/stream_io.hpp"
#include "adic/witnesses.hpp"

namespace adic {

using nlohmann::json;

// A parsed construction document: the verbatim JSON (with seeds resolved) plus
// a factory that rebuilds the stream it describes.
struct ConstructionSpec {
  json effective;  // config with defaults and seeds filled in
  std::string kind;
  int radix = 4;
  StreamFactory factory;
};

namespace spec_detail {

inline const json& require(const json& j, const char* field, const char* where) {
  const auto it = j.find(field);
  if (it == j.end())
    throw SpecError(std::string("construction spec: missing \"") + field + "\" in " +
                    where);
  return *it;
}

inline Rational rational_field(const json& j, const char* field, const char* where) {
  const json& v = require(j, field, where);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  throw SpecError(std::string("construction spec: \"") + field + "\" in " + where +
                  " must be an integer or a \"num/den\" string");
}

inline StochasticVector vector_field(const json& j, const char* field,
                                     const char* where) {
  const json& v = require(j, field, where);
  if (!v.is_array() || v.size() != 4)
    throw SpecError(std::string("construction spec: vector \"") + field + "\" in " +
                    where + " must be an array of 4 rationals");
  std::vector<Rational> entries;
  for (const auto& e : v) {
    if (e.is_number_integer())
      entries.push_back(Rational(e.get<std::int64_t>()));
    else if (e.is_string())
      entries.push_back(Rational::parse(e.get<std::string>()));
    else
      throw SpecError(std::string("construction spec: vector \"") + field +
                      "\" entries must be rationals");
  }
  return StochasticVector(std::move(entries), std::string("vector \"") + field + "\"");
}

inline LengthSchedule lengths_field(const json& j) {
  if (!j.contains("lengths")) return LengthSchedule::linear();
  const json& L = j.at("lengths");
  const std::string kind = require(L, "kind", "lengths").get<std::string>();
  if (kind == "linear") return LengthSchedule::linear();
  if (kind == "affine")
    return LengthSchedule::affine(require(L, "a", "lengths").get<std::uint64_t>(),
                                  L.value("b", std::uint64_t{0}));
  if (kind == "explicit") {
    const json& vals = require(L, "values", "lengths");
    if (!vals.is_array()) throw SpecError("lengths.values must be an array");
    return LengthSchedule::explicit_values(vals.get<std::vector<std::uint64_t>>());
  }
  throw SpecError("unknown lengths kind \"" + kind + "\"");
}

inline json lengths_echo(const json& j) {
  if (!j.contains("lengths")) return json{{"kind", "linear"}};
  return j.at("lengths");
}

inline EpsilonBits eps_field(const json& j, std::uint64_t default_seed,
                             json* echo) {
  json spec = j.contains("eps") ? j.at("eps") : json{{"kind", "seeded"}};
  const std::string kind = require(spec, "kind", "eps").get<std::string>();
  if (kind == "literal") {
    *echo = spec;
    return EpsilonBits::literal(require(spec, "bits", "eps").get<std::string>());
  }
  if (kind == "periodic") {
    *echo = spec;
    return EpsilonBits::periodic(require(spec, "pattern", "eps").get<std::string>());
  }
  if (kind == "seeded") {
    const std::uint64_t seed = spec.value("seed", default_seed);
    spec["seed"] = seed;
    *echo = spec;
    return EpsilonBits::seeded(seed);
  }
  throw SpecError("unknown eps kind \"" + kind + "\"");
}

inline BlockPermutation permutation_field(const json& j, std::uint64_t default_seed,
                                          json* echo) {
  const json& spec = require(j, "permutation", "permuted");
  const std::string kind = require(spec, "kind", "permutation").get<std::string>();
  if (kind == "identity") {
    *echo = spec;
    return BlockPermutation::identity();
  }
  if (kind == "reverse") {
    *echo = spec;
    return BlockPermutation::reverse();
  }
  if (kind == "seeded") {
    json resolved = spec;
    const std::uint64_t seed = spec.value("seed", default_seed);
    resolved["seed"] = seed;
    *echo = resolved;
    return BlockPermutation::seeded(seed);
  }
  if (kind == "explicit") {
    *echo = spec;
    const json& blocks = require(spec, "blocks", "permutation");
    std::map<std::uint64_t, std::vector<int>> rearranged;
    for (const auto& [key, value] : blocks.items()) {
      const std::uint64_t index = std::stoull(key);
      rearranged[index] = parse_ascii(value.get<std::string>(), 4);
    }
    return BlockPermutation::explicit_blocks(std::move(rearranged));
  }
  throw SpecError("unknown permutation kind \"" + kind + "\"");
}

inline EpsilonConfig epsilon_config_field(const json& j, std::uint64_t default_seed,
                                          json* effective) {
  EpsilonConfig cfg;
  cfg.k = j.value("k", std::uint64_t{0});
  cfg.k_min = j.value("k_min", std::uint64_t{64});
  cfg.k_search_limit = j.value("k_search_limit", std::uint64_t{4096});
  cfg.validation_blocks = j.value("validation_blocks", std::uint64_t{10000});
  json eps_echo;
  cfg.eps = eps_field(j, default_seed, &eps_echo);
  (*effective)["eps"] = eps_echo;
  if (j.contains("delta")) cfg.delta = rational_field(j, "delta", "eps-block");
  return cfg;
}

}  // namespace spec_detail

inline ConstructionSpec parse_construction(const json& doc,
                                           std::uint64_t default_seed = 1) {
  using namespace spec_detail;
  if (!doc.is_object()) throw SpecError("construction spec must be a JSON object");
  const std::string kind = require(doc, "construction", "spec").get<std::string>();
  ConstructionSpec out;
  out.kind = kind;
  out.effective = doc;

  if (kind == "rational") {
    const std::int64_t num = require(doc, "numerator", kind.c_str()).get<std::int64_t>();
    const std::int64_t den = require(doc, "denominator", kind.c_str()).get<std::int64_t>();
    const int radix = doc.value("radix", 4);
    check_unit_interval(num, den);
    Alphabet alphabet(radix);
    out.radix = radix;
    out.factory = [num, den, alphabet] { return rational_stream(num, den, alphabet); };
    return out;
  }

  if (kind == "periodic") {
    const int radix = doc.value("radix", 4);
    Alphabet alphabet(radix);
    const std::vector<int> pattern =
        parse_ascii(require(doc, "digits", kind.c_str()).get<std::string>(), radix);
    if (pattern.empty()) throw SpecError("periodic construction needs digits");
    out.radix = radix;
    out.factory = [pattern, alphabet] { return periodic_stream(pattern, alphabet); };
    return out;
  }

  if (kind == "file") {
    const std::string path = require(doc, "path", kind.c_str()).get<std::string>();
    const int radix = doc.value("radix", 4);
    const std::vector<int> digits = read_stream_file(path, radix);
    if (digits.empty()) throw std::domain_error("empty digit stream: " + path);
    Alphabet alphabet(radix);
    out.radix = radix;
    out.factory = [digits, alphabet] { return literal_stream(digits, alphabet); };
    return out;
  }

  if (kind == "block") {
    const json& cols = require(doc, "columns", kind.c_str());
    const std::string ckind = require(cols, "kind", "columns").get<std::string>();
    LengthSchedule lengths = lengths_field(doc);
    out.effective["lengths"] = lengths_echo(doc);
    std::function<StochasticVector(std::uint64_t)> column;
    if (ckind == "constant") {
      const StochasticVector tau = vector_field(cols, "tau", "columns");
      column = [tau](std::uint64_t) { return tau; };
    } else if (ckind == "cycle") {
      const json& taus = require(cols, "taus", "columns");
      if (!taus.is_array() || taus.empty())
        throw SpecError("columns.taus must be a nonempty array of vectors");
      std::vector<StochasticVector> pool;
      for (std::size_t i = 0; i < taus.size(); ++i) {
        json wrapper{{"tau", taus[static_cast<int>(i)]}};
        pool.push_back(vector_field(wrapper, "tau", "columns.taus"));
      }
      column = [pool](std::uint64_t k) { return pool[(k - 1) % pool.size()]; };
    } else {
      throw SpecError("unknown columns kind \"" + ckind + "\"");
    }
    out.factory = [column, lengths] { return block_number({column, lengths}); };
    return out;
  }

  if (kind == "theta2") {
    Theta2Params params{rational_field(doc, "theta", kind.c_str()),
                        vector_field(doc, "p", kind.c_str()),
                        vector_field(doc, "q", kind.c_str()), lengths_field(doc)};
    if (doc.contains("epsilon"))
      params.epsilon = rational_field(doc, "epsilon", kind.c_str());
    out.effective["lengths"] = lengths_echo(doc);
    theta2_witness(params);  // validate eagerly so errors surface at parse time
    out.factory = [params] { return theta2_witness(params); };
    return out;
  }

  if (kind == "theta3") {
    Theta3Params params{rational_field(doc, "theta", kind.c_str()),
                        rational_field(doc, "p0", kind.c_str()),
                        rational_field(doc, "q0", kind.c_str()),
                        rational_field(doc, "p1", kind.c_str()),
                        rational_field(doc, "q1", kind.c_str()), lengths_field(doc)};
    if (doc.contains("epsilon"))
      params.epsilon = rational_field(doc, "epsilon", kind.c_str());
    out.effective["lengths"] = lengths_echo(doc);
    theta3_witness(params);
    out.factory = [params] { return theta3_witness(params); };
    return out;
  }

  if (kind == "eps-block-theta2") {
    const Rational theta = rational_field(doc, "theta", kind.c_str());
    const StochasticVector p = vector_field(doc, "p", kind.c_str());
    const StochasticVector q = vector_field(doc, "q", kind.c_str());
    const EpsilonConfig cfg =
        epsilon_config_field(doc, default_seed, &out.effective);
    epsilon_theta2_stream(p, q, theta, cfg);
    out.factory = [p, q, theta, cfg] { return epsilon_theta2_stream(p, q, theta, cfg); };
    return out;
  }

  if (kind == "eps-block-theta3") {
    const Rational theta = rational_field(doc, "theta", kind.c_str());
    const json& zeros = require(doc, "zeros", kind.c_str());
    const json& threes = require(doc, "threes", kind.c_str());
    if (!zeros.is_array() || zeros.size() != 2 || !threes.is_array() ||
        threes.size() != 2)
      throw SpecError("eps-block-theta3 needs \"zeros\" and \"threes\" as 2-element arrays");
    const RegimePair zpair{Rational::parse(zeros[0].get<std::string>()),
                           Rational::parse(zeros[1].get<std::string>())};
    const RegimePair tpair{Rational::parse(threes[0].get<std::string>()),
                           Rational::parse(threes[1].get<std::string>())};
    const EpsilonConfig cfg =
        epsilon_config_field(doc, default_seed, &out.effective);
    epsilon_theta3_stream(zpair, tpair, theta, cfg);
    out.factory = [zpair, tpair, theta, cfg] {
      return epsilon_theta3_stream(zpair, tpair, theta, cfg);
    };
    return out;
  }

  if (kind == "permuted") {
    const json& base_doc = require(doc, "base", kind.c_str());
    ConstructionSpec base = parse_construction(base_doc, default_seed);
    out.effective["base"] = base.effective;
    json perm_echo;
    const BlockPermutation perm =
        spec_detail::permutation_field(doc, default_seed, &perm_echo);
    out.effective["permutation"] = perm_echo;
    const bool fix_first = doc.value("fix_first", true);
    StreamFactory base_factory = base.factory;
    permute_blocks(base_factory, perm, fix_first).next();  // validate base structure
    out.factory = [base_factory, perm, fix_first] {
      return permute_blocks(base_factory, perm, fix_first);
    };
    return out;
  }

  throw SpecError("unknown construction \"" + kind + "\"");
}

inline ConstructionSpec parse_construction_text(const std::string& text,
                                                std::uint64_t default_seed = 1) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("construction spec is not valid JSON: ") + e.what());
  }
  return parse_construction(doc, default_seed);
}

inline ConstructionSpec load_construction_file(const std::string& path,
                                               std::uint64_t default_seed = 1) {
  return parse_construction_text(read_file_bytes(path), default_seed);
}

}  // namespace adic

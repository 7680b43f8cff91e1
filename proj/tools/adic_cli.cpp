// Command line front end: generate digit streams from construction specs,
// tabulate and classify their statistics, compute dimensions, and run the
// built-in verification suites.  Exit codes: 0 success, 1 verification
// failure, 2 input/spec error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "adic/run.hpp"
#include "adic/verify.hpp"

namespace {

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const adic::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"4-adic digit stream constructions, statistics and dimensions"};
  app.require_subcommand(1);

  std::string spec_path, in_path, out_path, ladder_text = "auto";
  std::string format_text = "ascii", delta_text = "1/20", mode = "formula";
  std::string tau_text, points_path;
  std::uint64_t horizon = 1000000, seed = 1, k = 8;
  std::size_t samples = 10000, depth = 12, max_rank = 10;
  int radix = 4;

  auto* generate = app.add_subcommand("generate", "write a digit stream file");
  generate->add_option("--spec", spec_path, "construction spec (JSON file)")->required();
  generate->add_option("--out", out_path, "output digit file")->required();
  generate->add_option("--horizon", horizon, "number of digits");
  generate->add_option("--format", format_text, "ascii|packed");
  generate->add_option("--seed", seed, "seed for seeded eps/permutations");

  auto* analyze = app.add_subcommand("analyze", "tabulate prefix statistics as CSV");
  analyze->add_option("--spec", spec_path, "construction spec (JSON file)");
  analyze->add_option("--in", in_path, "digit stream file (ascii or packed)");
  analyze->add_option("--out", out_path, "output CSV (stdout when omitted)");
  analyze->add_option("--horizon", horizon, "prefix length");
  analyze->add_option("--ladder", ladder_text,
                      "auto|blocks|geometric[:first[:ratio]]|explicit:n1,n2,...");
  analyze->add_option("--seed", seed, "seed for seeded eps/permutations");
  analyze->add_option("--radix", radix, "radix of the input file");

  auto* classify_cmd = app.add_subcommand("classify", "empirical convergence verdict");
  classify_cmd->add_option("--spec", spec_path, "construction spec (JSON file)");
  classify_cmd->add_option("--in", in_path, "digit stream file");
  classify_cmd->add_option("--out", out_path, "output JSON (stdout when omitted)");
  classify_cmd->add_option("--horizon", horizon, "prefix length");
  classify_cmd->add_option("--ladder", ladder_text, "checkpoint ladder");
  classify_cmd->add_option("--delta", delta_text, "oscillation threshold (rational)");
  classify_cmd->add_option("--seed", seed, "seed for seeded eps/permutations");
  classify_cmd->add_option("--radix", radix, "radix of the input file");

  auto* dimension = app.add_subcommand("dimension", "dimension reports");
  dimension->add_option("--mode", mode, "formula|crossover|box-count")->required();
  dimension->add_option("--tau", tau_text, "comma-separated frequency vector");
  dimension->add_option("--radix", radix, "radix (formula/box-count)");
  dimension->add_option("--k", k, "block length (crossover)");
  dimension->add_option("--spec", spec_path, "sample points from this construction");
  dimension->add_option("--points", points_path, "points file, one digit string per line");
  dimension->add_option("--samples", samples, "number of sampled points");
  dimension->add_option("--depth", depth, "digits per sampled point");
  dimension->add_option("--max-rank", max_rank, "deepest cylinder rank");
  dimension->add_option("--seed", seed, "sampling seed");
  dimension->add_option("--out", out_path, "output JSON (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "run the built-in property suites");
  verify->add_option("--horizon", horizon, "digits per long-horizon check");

  CLI11_PARSE(app, argc, argv);

  if (generate->parsed()) {
    return guarded([&] {
      adic::GenerateConfig cfg;
      cfg.spec_doc = nlohmann::json::parse(adic::read_file_bytes(spec_path));
      cfg.out_path = out_path;
      cfg.horizon = horizon;
      cfg.format = adic::parse_format(format_text);
      cfg.seed = seed;
      const auto result = adic::run_generate(cfg);
      std::cout << "wrote " << result.digits_written << " digits to " << cfg.out_path
                << " (metadata: " << result.meta_path << ")\n";
      return 0;
    });
  }

  if (analyze->parsed()) {
    return guarded([&] {
      adic::AnalyzeConfig cfg;
      if (!spec_path.empty())
        cfg.spec_doc = nlohmann::json::parse(adic::read_file_bytes(spec_path));
      if (!in_path.empty()) cfg.in_path = in_path;
      cfg.out_path = out_path;
      cfg.horizon = horizon;
      cfg.ladder = adic::LadderChoice::parse(ladder_text);
      cfg.seed = seed;
      cfg.radix = radix;
      const std::string csv = adic::run_analyze(cfg);
      if (out_path.empty()) std::cout << csv;
      return 0;
    });
  }

  if (classify_cmd->parsed()) {
    return guarded([&] {
      adic::ClassifyConfig cfg;
      if (!spec_path.empty())
        cfg.spec_doc = nlohmann::json::parse(adic::read_file_bytes(spec_path));
      if (!in_path.empty()) cfg.in_path = in_path;
      cfg.out_path = out_path;
      cfg.horizon = horizon;
      cfg.ladder = adic::LadderChoice::parse(ladder_text);
      cfg.delta = adic::Rational::parse(delta_text);
      cfg.seed = seed;
      cfg.radix = radix;
      const auto verdict = adic::run_classify(cfg);
      if (out_path.empty()) std::cout << verdict.dump(2) << "\n";
      return 0;
    });
  }

  if (dimension->parsed()) {
    return guarded([&] {
      adic::DimensionConfig cfg;
      cfg.mode = mode;
      cfg.radix = radix;
      cfg.k = k;
      cfg.samples = samples;
      cfg.depth = depth;
      cfg.max_rank = max_rank;
      cfg.seed = seed;
      cfg.out_path = out_path;
      if (!tau_text.empty()) {
        std::vector<adic::Rational> entries;
        std::stringstream ss(tau_text);
        std::string part;
        while (std::getline(ss, part, ',')) entries.push_back(adic::Rational::parse(part));
        cfg.tau = adic::StochasticVector(std::move(entries), "vector \"tau\"");
      }
      if (!spec_path.empty())
        cfg.spec_doc = nlohmann::json::parse(adic::read_file_bytes(spec_path));
      if (!points_path.empty()) cfg.points_path = points_path;
      const auto report = adic::run_dimension(cfg);
      if (out_path.empty()) std::cout << report.dump(2) << "\n";
      return 0;
    });
  }

  // verify
  return guarded([&] {
    adic::VerifyOptions options;
    if (verify->count("--horizon")) options.scale_to_horizon(horizon);
    const auto results = adic::run_all_criteria(options, &std::cout);
    bool all_pass = true;
    for (const auto& r : results) all_pass = all_pass && r.passed;
    return all_pass ? 0 : 1;
  });
}

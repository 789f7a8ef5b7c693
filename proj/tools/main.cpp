#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "midpoint/cli/commands.hpp"

namespace {

void configure_logging() {
  const char* env = std::getenv("MIDPOINT_LOG");
  const std::string level = env ? env : "off";
  if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::off);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace midpoint::cli;
  configure_logging();

  CLI::App app{"Implicit midpoint fixed-point iterations for asymptotically nonexpansive maps"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::string config;
  std::string out_dir;
  std::string schemes;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config, "Experiment config (JSON)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Seed for randomized checks");
  };

  auto* run = app.add_subcommand("run", "Run one scheme and write its trace CSV");
  add_common(run, true);
  auto* validate = app.add_subcommand("validate-schedule", "Check a schedule's conditions");
  add_common(validate, true);
  validate->add_option("--horizon", opts.horizon, "Validation horizon")->check(CLI::Range(10L, 100'000'000L));
  auto* compare = app.add_subcommand("compare", "Compare schemes on one problem");
  add_common(compare, true);
  compare->add_option("--schemes", schemes, "Comma-separated scheme names");
  auto* table1 = app.add_subcommand("reproduce-table1", "Rerun the flip-map example");
  add_common(table1, false);
  auto* verify = app.add_subcommand("verify-mapping", "Sample-check a mapping's envelope");
  add_common(verify, true);

  CLI11_PARSE(app, argc, argv);

  if (!out_dir.empty()) opts.out_dir = out_dir;
  for (auto* sub : {run, validate, compare, table1, verify}) {
    if (sub->count("--seed")) opts.seed = seed;
  }
  if (!schemes.empty()) {
    std::size_t start = 0;
    while (start <= schemes.size()) {
      const auto comma = schemes.find(',', start);
      const auto token = schemes.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!token.empty()) opts.schemes.push_back(token);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }

  if (*run) return cmd_run(config, opts, std::cout, std::cerr);
  if (*validate) return cmd_validate_schedule(config, opts, std::cout, std::cerr);
  if (*compare) return cmd_compare(config, opts, std::cout, std::cerr);
  if (*table1) return cmd_reproduce_table1(opts, std::cout, std::cerr);
  if (*verify) return cmd_verify_mapping(config, opts, std::cout, std::cerr);
  return kExitError;
}

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "ncap/commands.hpp"

namespace {

// One line, so the error class stays machine-parsable.
int fail(std::string_view kind, std::string message, int code) {
  for (char& c : message)
    if (c == '\n' || c == '\r') c = ' ';
  std::cerr << "ncap: " << kind << ": " << message << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-contextual autonomy scoring: component performance, autonomy level and autonomy distance"};
  app.require_subcommand(1);

  std::string matrix, config, scores, methods = "max,sum,map,zsc,product", weights = "uniform", missing,
                                      format = "table", out;

  using Command = std::function<std::string(const ncap::cli::RunManifest&)>;
  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"score", {"N_CP per method with ranks", ncap::cli::cmd_score}},
      {"level", {"autonomy level N_AL from capability profiles", ncap::cli::cmd_level}},
      {"distance", {"absolute and relative potential autonomy distance", ncap::cli::cmd_distance}},
      {"plotdata", {"NCAP coordinates for external plotting", ncap::cli::cmd_plotdata}},
      {"compare", {"cross-method rank agreement", ncap::cli::cmd_compare}},
  };
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--matrix", matrix, "feature matrix CSV");
    sub->add_option("--config", config, "evaluation config (JSON)");
    sub->add_option("--scores", scores, "precomputed N_CP CSV (platform,<method>...) instead of --matrix");
    sub->add_option("--methods", methods, "comma list of max,sum,map,zsc,product");
    sub->add_option("--weights", weights, "uniform|config");
    sub->add_option("--missing", missing, "error|mean|exclude (overrides config)");
    sub->add_option("--format", format, "table|csv|jsonl");
    sub->add_option("--out", out, "write output to file instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what(), 2);
  }

  try {
    ncap::cli::RunManifest manifest;
    if (!matrix.empty()) manifest.matrix_path = matrix;
    if (!config.empty()) manifest.config_path = config;
    if (!scores.empty()) manifest.scores_path = scores;
    manifest.methods = ncap::cli::parse_method_list(methods);
    manifest.weights = ncap::cli::parse_weight_choice(weights);
    if (!missing.empty()) manifest.missing = ncap::parse_missing_policy(missing);
    manifest.format = ncap::cli::parse_format(format);
    manifest.color = out.empty() && manifest.format == ncap::cli::OutputFormat::Table &&
                     std::getenv("NCAP_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO);

    const auto* sub = app.get_subcommands().front();
    const std::string text = commands.at(sub->get_name()).second(manifest);

    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(out, std::ios::binary);
      if (!file) return fail("IoError", "cannot write '" + out + "'", 1);
      file << text;
    }
  } catch (const ncap::UsageError& e) {
    return fail(e.kind(), e.what(), 2);
  } catch (const ncap::Error& e) {
    return fail(e.kind(), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), 1);
  }
  return 0;
}

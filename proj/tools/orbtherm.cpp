#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "orbtherm/commands.hpp"
#include "orbtherm/output.hpp"

namespace fs = std::filesystem;
using namespace orbtherm;

int main(int argc, char** argv) {
  CLI::App app{"Coupled orbital and thermal evolution of two satellites near a 3:1 resonance"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int workers = 1;
  std::string preset = "nominal";
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--workers", workers, "Worker threads for maps")->check(CLI::Range(1, 1024));
  app.add_option("--preset", preset, "Built-in scenario preset")
      ->check(CLI::IsMember({"nominal", "extremal-burgers", "extremal-andrade"}));

  auto* profile = app.add_subcommand("profile", "Warm and cold radiogenic temperature profiles");
  auto* simulate = app.add_subcommand("simulate", "Coupled orbital-thermal run");
  std::string resume;
  simulate->add_option("--resume", resume, "Continue from a checkpoint file")->check(CLI::ExistingFile);
  auto* map = app.add_subcommand("map", "Phase-space map of semi-major axis variation");
  auto* estimate = app.add_subcommand("estimate", "Tidal heating estimate grid over (e, Q)");
  auto* rheology = app.add_subcommand("rheology", "Q against melting temperature for each rheology");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto rc = load_config(config_path.empty() ? std::nullopt : std::optional<fs::path>(config_path), preset);
    FileList files;
    if (profile->parsed()) files = cmd_profile(rc, out_dir);
    if (simulate->parsed())
      files = cmd_simulate(rc, out_dir, resume.empty() ? std::nullopt : std::optional<fs::path>(resume));
    if (map->parsed()) files = cmd_map(rc, out_dir, workers);
    if (estimate->parsed()) files = cmd_estimate(rc, out_dir);
    if (rheology->parsed()) files = cmd_rheology(rc, out_dir);
    for (const auto& f : files) std::printf("%s\n", f.string().c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

#include <CLI11.hpp>

#include <string>
#include <vector>

#include "tailvar/cli.hpp"

// tailvar: classify the right-tail behavior of a distribution or function,
// extract its representation, check inverse/Pi structure, and verify the
// extreme-value limit by Monte Carlo.

namespace {

void add_common(CLI::App* cmd, tailvar::RunConfig& cfg, std::string& xs_text) {
  cmd->add_option("spec", cfg.spec_path, "distribution spec file")->required();
  cmd->add_option("--grid-start", [&cfg](const std::vector<std::string>& v) {
        cfg.grid_start = std::stod(v.front());
        return true;
      }, "probe grid start T0 (> 0)");
  cmd->add_option("--grid-ratio", [&cfg](const std::vector<std::string>& v) {
        cfg.grid_ratio = std::stod(v.front());
        return true;
      }, "probe grid ratio r (> 1)");
  cmd->add_option("--grid-count", [&cfg](const std::vector<std::string>& v) {
        cfg.grid_count = std::stoi(v.front());
        return true;
      }, "probe grid size K (>= 8)");
  cmd->add_option("--tol", [&cfg](const std::vector<std::string>& v) {
        cfg.tol = std::stod(v.front());
        return true;
      }, "limit stabilization tolerance");
  cmd->add_option("--xs", xs_text, "comma-separated x grid for Gamma checks");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--blocks", cfg.blocks, "Monte Carlo block count");
  cmd->add_option("--n", cfg.n, "samples per block");
  cmd->add_option("--out", cfg.out_dir, "output directory");
}

std::vector<double> parse_xs(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) xs.push_back(std::stod(item));
  return xs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail variation toolkit"};
  app.require_subcommand(1);

  tailvar::RunConfig cfg;
  std::string xs_text;

  auto* classify = app.add_subcommand("classify", "classify the tail");
  auto* represent = app.add_subcommand("represent", "extract representation components");
  auto* invert = app.add_subcommand("invert", "inverse-index and Pi checks");
  auto* evt = app.add_subcommand("evt", "extreme-value Monte Carlo verification");
  auto* report = app.add_subcommand("report", "full pipeline");
  for (auto* cmd : {classify, represent, invert, evt, report})
    add_common(cmd, cfg, xs_text);

  CLI11_PARSE(app, argc, argv);

  if (classify->parsed()) cfg.command = tailvar::Command::Classify;
  if (represent->parsed()) cfg.command = tailvar::Command::Represent;
  if (invert->parsed()) cfg.command = tailvar::Command::Invert;
  if (evt->parsed()) cfg.command = tailvar::Command::Evt;
  if (report->parsed()) cfg.command = tailvar::Command::Report;
  if (!xs_text.empty()) {
    try {
      cfg.xs = parse_xs(xs_text);
    } catch (const std::exception&) {
      std::cerr << "error: bad --xs list '" << xs_text << "'\n";
      return 1;
    }
  }
  return tailvar::run(cfg);
}

// pgd <mode> --config <file-or-directory> [--out <prefix>]
//
// Exit status: 0 on success, 2 for an invalid command line or config, 3 when
// a solver fails or a check does not hold. A directory of *.cfg files is run
// in parallel, one output prefix per file under --out.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>

#include "CLI11.hpp"
#include "pgd/cli.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Exact and viscous solutions of pressureless gas dynamics in the quarter plane"};
  app.require_subcommand(1, 1);
  std::string config, out;
  const std::pair<pgd::Mode, const char*> modes[] = {
      {pgd::Mode::Riemann, "exact solution of the interior Riemann problem at x0"},
      {pgd::Mode::BoundaryRiemann, "exact solution of the boundary Riemann problem at the corner"},
      {pgd::Mode::Interact, "exact solution with the boundary and interior waves interacting"},
      {pgd::Mode::Viscous, "viscous solution at one epsilon, compared with the exact one"},
      {pgd::Mode::Check, "validation, weak residuals and mass balance of the exact solution"},
      {pgd::Mode::Converge, "distances and residuals along a decreasing epsilon list"},
  };
  for (auto [m, help] : modes) {
    auto* sub = app.add_subcommand(pgd::to_string(m), help);
    sub->add_option("--config", config, "scenario file, or a directory of *.cfg scenarios")->required();
    sub->add_option("--out", out, "output prefix (a directory when --config is a directory)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const auto mode = pgd::mode_from(app.get_subcommands().front()->get_name());

  std::vector<std::pair<std::string, std::string>> jobs;  // config, prefix
  if (fs::is_directory(config)) {
    for (const auto& entry : fs::directory_iterator(config)) {
      if (entry.path().extension() == ".cfg") jobs.push_back({entry.path().string(), ""});
    }
    std::sort(jobs.begin(), jobs.end());
    const fs::path base = out.empty() ? fs::path(".") : fs::path(out);
    for (auto& j : jobs) j.second = (base / fs::path(j.first).stem()).string();
    if (jobs.empty()) {
      std::cerr << "pgd: no .cfg files in '" << config << "'\n";
      return 2;
    }
  } else {
    jobs.push_back({config, out.empty() ? fs::path(config).stem().string() : out});
  }

  std::atomic<int> worst{0};
  std::mutex io;
  pgd::num::parallel_for(jobs.size(), [&](std::size_t k) {
    const auto r = pgd::run_scenario_file(jobs[k].first, mode, jobs[k].second);
    std::lock_guard<std::mutex> lock(io);
    if (r.status != 0) std::cerr << "pgd: " << jobs[k].first << ": " << r.message << "\n";
    int w = worst.load();
    while (r.status > w && !worst.compare_exchange_weak(w, r.status)) {
    }
  });
  return worst.load();
}

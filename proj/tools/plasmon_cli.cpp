// plasmon: spectrum | perturb | dn-derivative | validate
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error,
// 3 numerical error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "plasmon/plasmon.h"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  int threads = 1;
};

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

int run(const std::string& command, const Options& opt) {
  std::string config_text = "{}";
  if (!opt.config.empty()) {
    std::ifstream f(opt.config);
    if (!f) {
      std::cerr << "plasmon: cannot read config '" << opt.config << "'\n";
      return 2;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    config_text = ss.str();
  }
  if (!opt.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(opt.out, ec);
    if (ec) {
      std::cerr << "plasmon: cannot create output directory '" << opt.out << "'\n";
      return 2;
    }
  }

  pl_result* result = nullptr;
  const pl_status status =
      pl_run_job(command.c_str(), config_text.c_str(), opt.seed, opt.threads, opt.out.empty() ? nullptr : opt.out.c_str(), &result);
  if (status != PL_OK && status != PL_VALIDATION_FAILED) {
    std::cerr << "plasmon " << command << ": " << pl_last_error() << '\n';
    return status == PL_ERR_CONFIG ? 2 : 3;
  }

  std::cout << pl_result_table(result);
  if (opt.out.empty()) {
    std::cout << pl_result_json(result);
  } else {
    const std::filesystem::path dir(opt.out);
    std::string stem = command;
    bool ok = write_file(dir / (stem + ".json"), pl_result_json(result));
    ok = write_file(dir / (stem + ".csv"), pl_result_csv(result)) && ok;
    ok = write_file(dir / "timing.json", pl_result_timing_json(result)) && ok;
    if (!ok) {
      std::cerr << "plasmon: cannot write results to '" << opt.out << "'\n";
      pl_result_free(result);
      return 2;
    }
  }
  std::cerr << "wall time " << pl_result_wall_time(result) << " s\n";
  const int code = pl_result_passed(result) ? 0 : 1;
  pl_result_free(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plasmonic eigenvalues and shape perturbation of smooth domains"};
  app.set_version_flag("--version", std::string(pl_version()));
  app.require_subcommand(1);

  Options opt;
  std::string command;
  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "Plasmonic eigenvalues of a plane curve"},
      {"perturb", "Eigenvalue derivatives under a normal boundary shift (sphere or plane curve)"},
      {"dn-derivative", "Shape derivative of the Dirichlet-to-Neumann operators against finite differences"},
      {"validate", "Acceptance suite with one PASS/FAIL line per criterion"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "JSON job configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Directory for JSON, CSV and timing output");
    sub->add_option("--seed", opt.seed, "Seed for random probe vectors");
    sub->add_option("--threads", opt.threads, "Worker threads for step-size sweeps")->check(CLI::PositiveNumber);
    sub->callback([&command, n = std::string(name)] { command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run(command, opt);
}

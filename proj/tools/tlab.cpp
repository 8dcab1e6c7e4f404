#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tauberlab/experiment.hpp"
#include "tauberlab/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tauberlab numerical laboratory"};
  app.set_version_flag("--version", TAUBERLAB_VERSION);

  std::string command;
  app.add_option("command", command,
                 "one of: pvar, rl-check, tauber, semigroup-build, zeta-scan, "
                 "pnt, mertens, identities")
      ->required();

  tauberlab::RunOptions opt;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", opt.seed, "base RNG seed");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--threads", opt.threads, "OpenMP thread count (0 = default)");
  app.add_option("--tolerance", opt.tolerance, "identity check tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "cannot read config file: %s\n", config_path.c_str());
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    opt.config_text = buf.str();
  }

  const tauberlab::RunOutcome out = tauberlab::run_command(command, opt);
  std::printf("%s\n", out.message.c_str());
  for (const std::string& f : out.files) std::printf("  wrote %s\n", f.c_str());
  return out.exit_code;
}

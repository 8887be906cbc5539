#include "pfv/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Seeded verification suites for rank-bounded skew-symmetric cones"};
  app.get_formatter()->column_width(30);

  std::string suite;
  int n = 6;
  int r = 2;
  std::uint64_t seed = 0;
  long trials = -1;
  double tol = -1.0;
  std::string out_path;

  std::string suite_help = "suite name, one of:";
  for (const std::string& name : pfv::suite_names()) suite_help += " " + name;
  app.add_option("suite", suite, suite_help)->required();
  app.add_option("--n", n, "ambient dimension (default 6)");
  app.add_option("--r", r, "rank bound parameter: rank <= 2r (default 2)");
  app.add_option("--seed", seed, "base seed; per-trial seeds derive from it (default 0)");
  app.add_option("--trials", trials, "trial count; omit for the suite default");
  app.add_option("--tol", tol, "pass tolerance; omit for the suite default");
  app.add_option("--out", out_path, "also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }

  try {
    const pfv::VerificationReport report = pfv::run_suite(suite, n, r, seed, trials, tol);
    const std::string text = report.to_json();
    std::cout << text << "\n";
    if (!out_path.empty()) {
      std::ofstream file(out_path);
      if (!file) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
      }
      file << text << "\n";
    }
    return report.exit_code();
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include "pfv/matrix_io.hpp"
#include "pfv/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"Plot-ready CSV sweeps of weights, approach orders, and wedge determinants"};
  app.get_formatter()->column_width(30);

  pfv::SweepRequest req;
  std::string kind;
  std::string out_path;
  std::string base_path;
  std::string direction_path;
  bool member = true;
  bool non_member = false;

  app.add_option("kind", kind, "sweep kind: composite | slope | wedge-det")->required();
  app.add_option("--n", req.n, "ambient dimension (default 5)");
  app.add_option("--r", req.r, "rank bound parameter (default 1)");
  app.add_option("--seed", req.seed, "seed for sampled levels/blocks/queries (default 0)");
  app.add_option("--points", req.points, "grid size (default 201)");
  app.add_option("--tmax", req.tmax, "sweep endpoint; omit for a kind-specific default");
  app.add_option("--c", req.c, "composite: secondary level values, comma separated")
      ->delimiter(',');
  app.add_option("--x", req.x, "wedge-det: slice values, comma separated")->delimiter(',');
  app.add_option("--rank-pairs", req.rank_pairs,
                 "wedge-det: singular pair count of the unit normal block (default 1)");
  auto* member_flag = app.add_flag("--member", member, "slope: sample a tangent direction");
  app.add_flag("--non-member", non_member, "slope: sample a non-tangent direction")
      ->excludes(member_flag);
  auto* base_opt =
      app.add_option("--base", base_path, "slope: JSON file with the cone point");
  auto* dir_opt =
      app.add_option("--direction", direction_path, "slope: JSON file with the direction");
  base_opt->needs(dir_opt);
  dir_opt->needs(base_opt);
  app.add_option("--out", out_path, "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }

  req.kind = kind;
  req.member = member && !non_member;
  try {
    if (!base_path.empty()) {
      req.base = pfv::read_skew_json_file(base_path);
      req.direction = pfv::read_skew_json_file(direction_path);
    }
    std::ostringstream csv;
    pfv::emit_sweep(req, csv);
    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream file(out_path);
      if (!file) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
      }
      file << csv.str();
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

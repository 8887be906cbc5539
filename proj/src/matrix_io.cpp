#include "pfv/matrix_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pfv {

SkewMatrix read_skew_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("matrix json: parse failure: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("upper"))
    throw std::runtime_error("matrix json: expected an object with fields \"n\" and \"upper\"");
  if (!j["n"].is_number_integer())
    throw std::runtime_error("matrix json: \"n\" must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1) throw std::runtime_error("matrix json: \"n\" must be positive");
  if (!j["upper"].is_array())
    throw std::runtime_error("matrix json: \"upper\" must be an array of numbers");
  const auto& upper = j["upper"];
  const size_t want = static_cast<size_t>(n) * (n - 1) / 2;
  if (upper.size() != want)
    throw std::runtime_error("matrix json: \"upper\" must hold n(n-1)/2 = " +
                             std::to_string(want) + " numbers, got " +
                             std::to_string(upper.size()));
  std::vector<double> entries;
  entries.reserve(want);
  for (const auto& v : upper) {
    if (!v.is_number()) throw std::runtime_error("matrix json: \"upper\" entries must be numbers");
    entries.push_back(v.get<double>());
  }
  return SkewMatrix::from_upper(n, entries);
}

SkewMatrix read_skew_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("matrix json: cannot open " + path);
  return read_skew_json(in);
}

void write_skew_json(std::ostream& out, const SkewMatrix& m) {
  nlohmann::json j;
  j["n"] = m.dim();
  j["upper"] = m.upper_entries();
  out << j.dump(2) << "\n";
}

void write_skew_json_file(const std::string& path, const SkewMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("matrix json: cannot open " + path + " for writing");
  write_skew_json(out, m);
}

}  // namespace pfv

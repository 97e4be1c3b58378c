#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "brwsim/cluster_law.hpp"
#include "json.hpp"

namespace brwsim::io {

using Json = nlohmann::ordered_json;

/// "1:0.5,3:0.5" -> {(1, 0.5), (3, 0.5)}.
FinitePmf parse_pmf(const std::string& text);
std::vector<double> parse_list(const std::string& text);

/// Law documents:
///   {"variant": "deterministic", "displacements": [0, 1]}
///   {"variant": "count_and_shift", "count": [[1, 0.5], [3, 0.5]], "shift": [[0, 0.5], [1, 0.5]]}
///   {"variant": "bst"} or {"variant": "rrt"}
ClusterLaw law_from_json(const Json& doc);
Json law_to_json(const ClusterLaw& law);
ClusterLaw load_law(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

struct Verdict {
  std::string model;
  std::optional<std::size_t> n;
  std::optional<std::size_t> M;
  std::optional<std::size_t> h;
  std::optional<std::size_t> frozen_path_id;
  std::string statistic;
  std::optional<double> ks;
  std::optional<double> p_value;
  std::string target;
  bool pass = false;
  Json extra = Json::object();  // optional additional fields
};

Json to_json(const Verdict& v);

void write_json(const std::filesystem::path& path, const Json& doc);

/// CSV with a header row, '.' decimals, and round-trip number formatting.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace brwsim::io

#include "brwsim/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "brwsim/error.hpp"

namespace brwsim::io {

namespace {

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size()) throw InvalidArgument("not a number: '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

FinitePmf pmf_from_json(const Json& pairs) {
  if (!pairs.is_array()) throw InvalidLaw("pmf must be an array of [value, probability] pairs");
  std::vector<std::pair<double, double>> out;
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw InvalidLaw("pmf entries must be [value, probability] pairs");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return FinitePmf::from_pairs(std::move(out));
}

Json pmf_to_json(const FinitePmf& pmf) {
  Json out = Json::array();
  for (std::size_t i = 0; i < pmf.size(); ++i) out.push_back({pmf.values()[i], pmf.probs()[i]});
  return out;
}

}  // namespace

FinitePmf parse_pmf(const std::string& text) {
  std::vector<std::pair<double, double>> pairs;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument("pmf entry '" + item + "' is not of the form value:probability");
    }
    pairs.emplace_back(parse_number(item.substr(0, colon)), parse_number(item.substr(colon + 1)));
  }
  return FinitePmf::from_pairs(std::move(pairs));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

ClusterLaw law_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("variant") || !doc["variant"].is_string()) {
    throw InvalidLaw("law document needs a string field 'variant'");
  }
  const auto variant = doc["variant"].get<std::string>();
  if (variant == "deterministic") {
    if (!doc.contains("displacements")) throw InvalidLaw("missing 'displacements'");
    return ClusterLaw::deterministic(doc["displacements"].get<std::vector<double>>());
  }
  if (variant == "count_and_shift") {
    if (!doc.contains("count")) throw InvalidLaw("missing 'count'");
    const FinitePmf shift =
        doc.contains("shift") ? pmf_from_json(doc["shift"]) : FinitePmf::point_mass(0.0);
    return ClusterLaw::count_and_shift(pmf_from_json(doc["count"]), shift);
  }
  if (variant == "bst") return ClusterLaw::bst_split();
  if (variant == "rrt") return ClusterLaw::rrt_split();
  throw InvalidLaw("unknown law variant '" + variant + "'");
}

Json law_to_json(const ClusterLaw& law) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Deterministic>) {
          return Json{{"variant", "deterministic"}, {"displacements", v.displacements}};
        } else if constexpr (std::is_same_v<T, CountAndShift>) {
          return Json{{"variant", "count_and_shift"},
                      {"count", pmf_to_json(v.count)},
                      {"shift", pmf_to_json(v.shift)}};
        } else if constexpr (std::is_same_v<T, BstSplit>) {
          return Json{{"variant", "bst"}};
        } else {
          return Json{{"variant", "rrt"}};
        }
      },
      law.variant());
}

ClusterLaw load_law(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open law file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidLaw("law file " + path.string() + " is not valid JSON: " + e.what());
  }
  return law_from_json(doc);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Json to_json(const Verdict& v) {
  auto opt = [](const auto& o) -> Json { return o ? Json(*o) : Json(nullptr); };
  Json j{{"model", v.model},
         {"n", opt(v.n)},
         {"M", opt(v.M)},
         {"h", opt(v.h)},
         {"frozen_path_id", opt(v.frozen_path_id)},
         {"statistic", v.statistic},
         {"ks", opt(v.ks)},
         {"p_value", opt(v.p_value)},
         {"target", v.target},
         {"pass", v.pass}};
  for (const auto& [key, value] : v.extra.items()) j[key] = value;
  return j;
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : columns_(header.size()) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path);
  if (!out_) throw InvalidArgument("cannot write " + path.string());
  row(header);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw InvalidArgument("CSV row has the wrong number of columns");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace brwsim::io

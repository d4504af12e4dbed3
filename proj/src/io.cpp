#include "binpack/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "binpack/errors.hpp"

namespace binpack {

Instance read_instance(std::istream& in) {
  std::vector<Size> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      items.push_back(Size::parse(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    } catch (const ParameterError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return Instance(std::move(items));
}

Instance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
  if (const auto& meta = instance.meta()) {
    out << "# family: " << meta->name << '\n';
    for (const auto& [key, value] : meta->params) out << "# " << key << " = " << to_string(value) << '\n';
  }
  for (const Size& s : instance.items()) out << to_string(s.value()) << '\n';
}

nlohmann::json packing_to_json(const Packing& packing) {
  nlohmann::json j;
  j["assignment"] = packing.assignment;
  if (packing.cardinality_cap) {
    j["k"] = *packing.cardinality_cap;
  } else {
    j["k"] = nullptr;
  }
  return j;
}

Packing packing_from_json(const nlohmann::json& j) {
  Packing p;
  try {
    p.assignment = j.at("assignment").get<std::vector<BinIndex>>();
    if (j.contains("k") && !j.at("k").is_null()) p.cardinality_cap = j.at("k").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad packing JSON: ") + e.what(), 0);
  }
  return p;
}

nlohmann::json params_to_json(const ParamMap& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : params) j[key] = to_string(value);
  return j;
}

ParamMap params_from_json(const nlohmann::json& j) {
  ParamMap params;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw ParseError("parameter '" + key + "' is not a \"p/q\" string", 0);
    params[key] = parse_rational(value.get<std::string>());
  }
  return params;
}

}  // namespace binpack

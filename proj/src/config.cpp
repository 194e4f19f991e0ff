#include "ulab/config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "ulab/error.hpp"

namespace ulab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::BadWord: return "BadWord";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::NoFiniteOrder: return "NoFiniteOrder";
    case ErrorKind::BadTarget: return "BadTarget";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

const Limits& default_limits() {
  static const Limits limits{};
  return limits;
}

Limits load_limits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");

  Limits limits;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto& key = it.key();
    if (!it->is_number_unsigned() && !it->is_number_integer())
      throw Error(ErrorKind::Parse, "config key '" + key + "' must be a non-negative integer");
    auto value = it->get<std::int64_t>();
    if (value < 0) throw Error(ErrorKind::Parse, "config key '" + key + "' is negative");
    auto u = static_cast<std::uint64_t>(value);
    if (key == "max_level") limits.max_level = static_cast<unsigned>(u);
    else if (key == "max_word_length") limits.max_word_length = static_cast<unsigned>(u);
    else if (key == "max_group_order") limits.max_group_order = u;
    else if (key == "max_hom_nodes") limits.max_hom_nodes = u;
    else if (key == "max_search_nodes") limits.max_search_nodes = u;
    else if (key == "cayley_table_max") limits.cayley_table_max = u;
    else if (key == "threads") limits.threads = static_cast<unsigned>(u == 0 ? 1 : u);
    else throw Error(ErrorKind::Parse, "unknown config key '" + key + "'");
  }
  return limits;
}

Limits limits_from_environment() {
  if (const char* path = std::getenv("UNIPOTENT_LAB_CONFIG"); path && *path)
    return load_limits(path);
  return Limits{};
}

}  // namespace ulab

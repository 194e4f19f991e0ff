#pragma once

#include <cstdint>
#include <string>

namespace ulab {

// Size and search budgets. Every expensive operation takes one of these.
struct Limits {
  unsigned max_level = 8;               // filtration level n for word oracles
  unsigned max_word_length = 32;        // sum of |exponents|
  std::size_t max_group_order = 20000;  // closure cap
  std::uint64_t max_hom_nodes = 100000000;
  std::uint64_t max_search_nodes = 100000000;  // Massey / exhaustive searches
  std::size_t cayley_table_max = 2048;  // groups up to this order get a full table
  unsigned threads = 1;
};

// Reads a JSON object with any subset of the Limits keys. Unknown keys are an
// error so that typos do not silently fall back to defaults.
Limits load_limits(const std::string& path);

// Limits from $UNIPOTENT_LAB_CONFIG if set, defaults otherwise.
Limits limits_from_environment();

const Limits& default_limits();

}  // namespace ulab

#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace koszul::testing {

inline nlohmann::json load_golden(const std::string& name) {
  std::ifstream in(std::string(KOSZUL_GOLDEN_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing golden file " + name);
  return nlohmann::json::parse(in);
}

}  // namespace koszul::testing

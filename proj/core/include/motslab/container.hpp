#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace motslab {

// Self-describing file: magic, JSON header length, JSON header, raw float64 arrays.
struct Container {
  nlohmann::json header;
  std::map<std::string, std::vector<double>> arrays;
  std::map<std::string, std::vector<std::size_t>> shapes;

  void put(const std::string& name, std::vector<double> data, std::vector<std::size_t> shape);
  const std::vector<double>& get(const std::string& name) const;
};

void write_container(const Container& c, const std::string& path);
Container read_container(const std::string& path);

// write to path.tmp then rename
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace motslab

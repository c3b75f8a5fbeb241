#include "motslab/container.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "motslab/errors.hpp"

namespace motslab {

namespace {
constexpr char kMagic[8] = {'M', 'O', 'T', 'S', 'L', 'A', 'B', '1'};
static_assert(std::endian::native == std::endian::little, "container assumes little-endian");

void rename_into_place(const std::string& tmp, const std::string& path) {
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot move " + tmp + " to " + path + ": " + ec.message());
}
}  // namespace

void Container::put(const std::string& name, std::vector<double> data,
                    std::vector<std::size_t> shape) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  if (n != data.size()) throw ShapeError("container: shape of '" + name + "' does not match data");
  arrays[name] = std::move(data);
  shapes[name] = std::move(shape);
}

const std::vector<double>& Container::get(const std::string& name) const {
  auto it = arrays.find(name);
  if (it == arrays.end()) throw ShapeError("container: missing array '" + name + "'");
  return it->second;
}

void write_container(const Container& c, const std::string& path) {
  nlohmann::json h = c.header;
  nlohmann::json list = nlohmann::json::array();
  std::uint64_t offset = 0;
  for (const auto& [name, data] : c.arrays) {
    list.push_back({{"name", name}, {"offset", offset}, {"count", data.size()},
                    {"shape", c.shapes.at(name)}, {"dtype", "float64"}});
    offset += data.size() * sizeof(double);
  }
  h["arrays"] = list;
  std::string text = h.dump();
  while ((text.size() + 16) % 8 != 0) text.push_back(' ');

  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw Error("cannot open " + tmp + " for writing");
    os.write(kMagic, 8);
    const std::uint64_t len = text.size();
    os.write(reinterpret_cast<const char*>(&len), sizeof(len));
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    for (const auto& [name, data] : c.arrays)
      os.write(reinterpret_cast<const char*>(data.data()),
               static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!os) throw Error("write failed for " + tmp);
  }
  rename_into_place(tmp, path);
}

Container read_container(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) throw Error(path + ": not a container file");
  std::uint64_t len = 0;
  is.read(reinterpret_cast<char*>(&len), sizeof(len));
  std::string text(len, '\0');
  is.read(text.data(), static_cast<std::streamsize>(len));
  Container c;
  c.header = nlohmann::json::parse(text);
  const auto base = is.tellg();
  for (const auto& a : c.header.at("arrays")) {
    const std::string name = a.at("name");
    const std::size_t count = a.at("count");
    std::vector<double> data(count);
    is.seekg(base + static_cast<std::streamoff>(a.at("offset").get<std::uint64_t>()));
    is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!is) throw Error(path + ": truncated array '" + name + "'");
    c.put(name, std::move(data), a.at("shape").get<std::vector<std::size_t>>());
  }
  c.header.erase("arrays");
  return c;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw Error("cannot open " + tmp + " for writing");
    os << text;
    if (!os) throw Error("write failed for " + tmp);
  }
  rename_into_place(tmp, path);
}

}  // namespace motslab

#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace support {

std::filesystem::path fixture_dir() {
  return std::filesystem::path(FIXTURE_DIR);
}

std::filesystem::path fixture(const std::string& relative) {
  return fixture_dir() / relative;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open fixture " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace support

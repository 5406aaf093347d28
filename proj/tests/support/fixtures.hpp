// Locating and reading the on-disk test fixtures.
#pragma once

#include <filesystem>
#include <string>

namespace support {

/// Root of tests/fixtures, injected by the build.
std::filesystem::path fixture_dir();

/// A path under the fixture root, e.g. fixture("rover/domain.pddl").
std::filesystem::path fixture(const std::string& relative);

std::string read_file(const std::filesystem::path& path);

}  // namespace support

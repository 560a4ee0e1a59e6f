#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace scinda::gz {

/// Decompresses a complete gzip stream (all members). Throws ArchiveError on
/// empty input, bad magic, corrupt data or truncation; `name` labels the error.
std::string decompress(std::string_view bytes, const std::string& name = {});

/// Deterministic gzip encoding (zero mtime, no file name, fixed level).
std::string compress(std::string_view data);

std::string read_file(const std::filesystem::path& path);
std::string read_gzip_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace scinda::gz

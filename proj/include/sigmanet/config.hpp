#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sigmanet {

// Flat `key = value` files with `[section]` headers. '#' starts a comment.

struct KvEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

struct KvSection {
    std::string name;  // empty for the leading global block
    std::size_t line = 0;
    std::vector<KvEntry> entries;
};

struct KvFile {
    std::vector<KvSection> sections;  // sections[0] is always the global block
};

/// Throws ConfigError with a "line N" field on malformed lines.
KvFile parse_kv(std::string_view text);
KvFile load_kv(const std::filesystem::path& path);

}  // namespace sigmanet

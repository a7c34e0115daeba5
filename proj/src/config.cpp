#include "sigmanet/config.hpp"

#include <fstream>
#include <sstream>

#include "sigmanet/errors.hpp"

namespace sigmanet {

namespace {

std::string trimmed(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

KvFile parse_kv(std::string_view text) {
    KvFile file;
    file.sections.push_back({});
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trimmed(raw);
        if (line.empty()) continue;

        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where, "unterminated section header");
            const std::string name = trimmed(std::string_view(line).substr(1, line.size() - 2));
            if (name.empty()) throw ConfigError(where, "empty section name");
            file.sections.push_back({name, line_no, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where, "expected 'key = value'");
        std::string key = trimmed(std::string_view(line).substr(0, eq));
        std::string value = trimmed(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError(where, "missing key");
        file.sections.back().entries.push_back({std::move(key), std::move(value), line_no});
    }
    return file;
}

KvFile load_kv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kv(buf.str());
}

}  // namespace sigmanet

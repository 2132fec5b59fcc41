#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace horolab {

// Minimal CSV emitter with deterministic %.17g formatting, so identical runs
// produce byte-identical files.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::FILE* file_ = nullptr;
};

std::string format_double(double v);

// Line-based config: `key = value` entries under `[section]` headers.
// Section names match experiment names; keys outside any section apply to
// every experiment. Later duplicates win.
using ConfigFile = std::map<std::string, std::map<std::string, std::string>>;

ConfigFile parse_config_file(const std::string& path);

} // namespace horolab

#include "horolab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace horolab {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header) : path_(path) {
    file_ = std::fopen(path.c_str(), "wb");
    if (!file_) throw std::runtime_error("CsvWriter: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        std::fprintf(file_, "%s%s", header[i].c_str(), i + 1 == header.size() ? "\n" : ",");
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(file_);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(file_, "%.17g%s", values[i], i + 1 == values.size() ? "\n" : ",");
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(file_, "%s%s", values[i].c_str(), i + 1 == values.size() ? "\n" : ",");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

ConfigFile parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    ConfigFile cfg;
    std::string section;   // "" = global
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw std::invalid_argument("config: unterminated section at line " + std::to_string(lineNo));
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value at line " + std::to_string(lineNo));
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key at line " + std::to_string(lineNo));
        cfg[section][key] = value;
    }
    return cfg;
}

} // namespace horolab

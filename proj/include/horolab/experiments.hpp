#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace horolab {

inline constexpr const char* kVersion = "0.1.0";

// Exit statuses shared by the library runner and the CLI.
inline constexpr int kStatusOk = 0;
inline constexpr int kStatusUsage = 2;
inline constexpr int kStatusCapacity = 3;
inline constexpr int kStatusPropertyFail = 4;

struct ExperimentConfig {
    std::string name;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 1;
    std::string outDir = ".";
    std::string sieveCache;
    int jobs = 0;
};

struct ExperimentInfo {
    std::string name;
    std::string claim;   // plain-language statement the run probes
    std::map<std::string, std::string> defaults;
};

const std::vector<ExperimentInfo>& experiment_catalog();

// Runs one experiment: validates parameters against the catalog, executes,
// writes CSV data files and manifest.json under cfg.outDir. Returns one of
// the kStatus values; a human-readable summary lands in *message.
int run_experiment(const ExperimentConfig& cfg, std::string* message = nullptr);

} // namespace horolab

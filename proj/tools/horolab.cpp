#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "horolab/experiments.hpp"
#include "horolab/io.hpp"

namespace {

void print_usage() {
    std::printf("usage: horolab <experiment> [--<param> <value>]... [options]\n");
    std::printf("       horolab list\n\n");
    std::printf("options:\n");
    std::printf("  --config <path>       key=value file with [experiment] sections; flags override\n");
    std::printf("  --out <dir>           output directory (default .)\n");
    std::printf("  --seed <u64>          seed for any randomized construction (default 1)\n");
    std::printf("  --jobs <n>            worker thread cap, 0 = library default\n");
    std::printf("  --sieve-cache <path>  binary sieve cache file, reused when large enough\n\n");
    std::printf("experiments:\n");
    for (const auto& info : horolab::experiment_catalog()) {
        std::printf("  %-18s %s\n", info.name.c_str(), info.claim.c_str());
        std::printf("  %-18s defaults:", "");
        for (const auto& [k, v] : info.defaults) std::printf(" %s=%s", k.c_str(), v.c_str());
        std::printf("\n");
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage();
        return horolab::kStatusUsage;
    }
    const std::string command = argv[1];
    if (command == "list" || command == "--help" || command == "-h") {
        print_usage();
        return command == "list" ? horolab::kStatusOk : horolab::kStatusUsage;
    }

    horolab::ExperimentConfig cfg;
    cfg.name = command;

    std::string configPath;
    std::vector<std::pair<std::string, std::string>> flagParams;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0 || i + 1 >= argc) {
            std::fprintf(stderr, "horolab: expected --key value pairs, got '%s'\n", arg.c_str());
            return horolab::kStatusUsage;
        }
        const std::string key = arg.substr(2);
        const std::string value = argv[++i];
        if (key == "config")
            configPath = value;
        else if (key == "out")
            cfg.outDir = value;
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "jobs")
            cfg.jobs = std::stoi(value);
        else if (key == "sieve-cache")
            cfg.sieveCache = value;
        else
            flagParams.emplace_back(key, value);
    }

    try {
        if (!configPath.empty()) {
            const horolab::ConfigFile file = horolab::parse_config_file(configPath);
            const auto applySection = [&](const std::string& section) {
                const auto it = file.find(section);
                if (it == file.end()) return;
                for (const auto& [k, v] : it->second) {
                    if (k == "out")
                        cfg.outDir = v;
                    else if (k == "seed")
                        cfg.seed = std::stoull(v);
                    else if (k == "jobs")
                        cfg.jobs = std::stoi(v);
                    else if (k == "sieve-cache")
                        cfg.sieveCache = v;
                    else
                        cfg.params[k] = v;
                }
            };
            applySection("");         // global section first
            applySection(cfg.name);   // experiment section refines it
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "horolab: %s\n", e.what());
        return horolab::kStatusUsage;
    }
    for (const auto& [k, v] : flagParams) cfg.params[k] = v;   // flags override file

    std::string message;
    const int status = horolab::run_experiment(cfg, &message);
    if (status == horolab::kStatusOk)
        std::printf("%s: %s\n", cfg.name.c_str(), message.c_str());
    else
        std::fprintf(stderr, "horolab %s: %s\n", cfg.name.c_str(), message.c_str());
    return status;
}

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinrot/core.hpp"
#include "spinrot/time_series.hpp"

namespace spinrot {

inline constexpr const char* kVersion = "0.1.0";

struct Dataset {
    std::string name;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    static Dataset from_time_series(std::string name, const TimeSeries& ts,
                                    const std::vector<std::string>& channels);
};

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& text);

struct SweepSpec {
    std::string target;
    std::map<std::string, std::string> params;  // overrides of the target defaults
    int workers = 1;
    OutputFormat format = OutputFormat::csv;
    std::filesystem::path out_dir = ".";
};

std::vector<std::string> sweep_targets();
std::map<std::string, std::string> sweep_defaults(const std::string& target);

// Throws ValidationError listing every problem found.
void validate_sweep(const SweepSpec& spec);

std::vector<Dataset> compute_sweep(const SweepSpec& spec);
// compute + write <out_dir>/<dataset name>.<csv|json>; returns the paths written
std::vector<std::filesystem::path> run_sweep(const SweepSpec& spec);

// 17 significant digits, round-trip exact
std::string format_number(double x);
std::string format_csv(const Dataset& d);
std::string format_json(const Dataset& d);
void write_dataset(const Dataset& d, OutputFormat format, const std::filesystem::path& path);

}  // namespace spinrot

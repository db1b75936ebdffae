#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mcboost/core.hpp"

namespace mcboost::harness {

enum class MissingPolicy {
    reject,
    zero_fill,  // numeric -> 0, categorical -> all-zero indicator block
};

struct DatasetSpec {
    std::filesystem::path path;
    std::string label_column = "class";
    std::vector<std::string> feature_columns;  // empty: all non-label columns
    MissingPolicy missing = MissingPolicy::reject;
};

struct Dataset {
    std::string name;
    std::vector<Example> examples;
    int k = 0;
    int dim = 0;
    std::vector<std::string> label_names;    // sorted; position = internal label
    std::vector<std::string> feature_names;  // after one-hot expansion
};

// Streams a headered CSV into fixed-dimension examples. Non-numeric columns
// are one-hot encoded (categories sorted); labels map to 0..k-1 in sorted
// order. Missing cells ("" or "?") follow the configured policy. Throws
// DataError with a line number on malformed input.
Dataset ingest_csv(const DatasetSpec& spec);

// Raw string table, one header row plus data rows.
struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const RawTable& table, const std::filesystem::path& path);

// Balance scale: the full 5^4 grid of (left weight, left distance, right
// weight, right distance); the side with the larger weight*distance torque
// wins, equal torques balance. 625 rows, 3 classes, 4 numeric predictors.
RawTable generate_balance_table();

// Car evaluation: the full factorial over six categorical attributes labeled
// by a hierarchical rule model (price from buying/maint, comfort from
// doors/persons/boot, tech from comfort/safety, class from price/tech).
// 1728 rows, 4 classes; class counts 1210/384/69/65.
RawTable generate_cars_table();

// Generates to a file and ingests it back (exercising the CSV path).
Dataset make_balance_dataset(const std::filesystem::path& dir);
Dataset make_cars_dataset(const std::filesystem::path& dir);

}  // namespace mcboost::harness

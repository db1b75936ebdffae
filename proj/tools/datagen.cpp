// Writes the built-in benchmark tables (balance.csv, cars.csv) so runs work
// without network access; see datasets/fetch_datasets.sh for the originals.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>

#include "mcboost/harness/dataset.hpp"

int main(int argc, char** argv) {
    CLI::App app{"generate the built-in benchmark datasets"};
    std::string out_dir = "datasets";
    app.add_option("--out", out_dir, "output directory");
    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out_dir);
        const auto dir = std::filesystem::path(out_dir);
        mcboost::harness::write_csv(mcboost::harness::generate_balance_table(), dir / "balance.csv");
        mcboost::harness::write_csv(mcboost::harness::generate_cars_table(), dir / "cars.csv");
        std::printf("wrote %s and %s\n", (dir / "balance.csv").string().c_str(),
                    (dir / "cars.csv").string().c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}

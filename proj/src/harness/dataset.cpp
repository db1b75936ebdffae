#include "mcboost/harness/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mcboost/harness/errors.hpp"

namespace mcboost::harness {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line, std::int64_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) {
        throw DataError("line " + std::to_string(line_no) + ": unterminated quote");
    }
    fields.push_back(trim(field));
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

bool is_missing(const std::string& s) { return s.empty() || s == "?"; }

}  // namespace

Dataset ingest_csv(const DatasetSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) throw DataError("cannot open " + spec.path.string());

    std::string line;
    std::int64_t line_no = 0;
    if (!std::getline(in, line)) throw DataError(spec.path.string() + ": empty file");
    ++line_no;
    const std::vector<std::string> header = split_csv_line(line, line_no);

    int label_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == spec.label_column) label_col = static_cast<int>(i);
    }
    if (label_col < 0) {
        throw DataError(spec.path.string() + ": label column '" + spec.label_column + "' not found");
    }

    std::vector<int> feature_cols;
    if (spec.feature_columns.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (static_cast<int>(i) != label_col) feature_cols.push_back(static_cast<int>(i));
        }
    } else {
        for (const auto& name : spec.feature_columns) {
            int col = -1;
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (header[i] == name) col = static_cast<int>(i);
            }
            if (col < 0) throw DataError(spec.path.string() + ": feature column '" + name + "' not found");
            feature_cols.push_back(col);
        }
    }

    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line, line_no);
        if (fields.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        }
        if (spec.missing == MissingPolicy::reject) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (static_cast<int>(i) != label_col && is_missing(fields[i])) {
                    throw DataError("line " + std::to_string(line_no) + ": missing value in column '" +
                                    header[i] + "'");
                }
            }
        }
        if (is_missing(fields[label_col])) {
            throw DataError("line " + std::to_string(line_no) + ": missing label");
        }
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) throw DataError(spec.path.string() + ": no data rows");

    // label map (sorted distinct values -> 0..k-1)
    std::set<std::string> label_set;
    for (const auto& r : rows) label_set.insert(r[label_col]);
    if (label_set.size() < 2) throw DataError(spec.path.string() + ": need at least two distinct labels");
    std::vector<std::string> label_names(label_set.begin(), label_set.end());
    std::map<std::string, int> label_of;
    for (std::size_t i = 0; i < label_names.size(); ++i) label_of[label_names[i]] = static_cast<int>(i);

    // column typing: numeric iff every present value parses as a double
    struct ColumnPlan {
        int col;
        bool numeric;
        std::vector<std::string> categories;  // sorted, categorical only
    };
    std::vector<ColumnPlan> plans;
    int dim = 0;
    for (int col : feature_cols) {
        ColumnPlan plan{col, true, {}};
        std::set<std::string> values;
        for (const auto& r : rows) {
            if (is_missing(r[col])) continue;
            double tmp;
            if (!parse_double(r[col], tmp)) plan.numeric = false;
            values.insert(r[col]);
        }
        if (!plan.numeric) plan.categories.assign(values.begin(), values.end());
        dim += plan.numeric ? 1 : static_cast<int>(plan.categories.size());
        plans.push_back(std::move(plan));
    }
    if (dim == 0) throw DataError(spec.path.string() + ": no feature columns");

    Dataset ds;
    ds.name = spec.path.stem().string();
    ds.k = static_cast<int>(label_names.size());
    ds.dim = dim;
    ds.label_names = std::move(label_names);
    for (const auto& plan : plans) {
        if (plan.numeric) {
            ds.feature_names.push_back(header[plan.col]);
        } else {
            for (const auto& cat : plan.categories) {
                ds.feature_names.push_back(header[plan.col] + "=" + cat);
            }
        }
    }

    ds.examples.reserve(rows.size());
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        const auto& r = rows[ri];
        Example e;
        e.label = label_of.at(r[label_col]);
        e.weight = 1.0;
        e.features = Eigen::VectorXd::Zero(dim);
        int at = 0;
        for (const auto& plan : plans) {
            const std::string& cell = r[plan.col];
            if (plan.numeric) {
                double v = 0.0;
                if (!is_missing(cell)) {
                    if (!parse_double(cell, v)) {
                        throw DataError("row " + std::to_string(ri + 2) + ": non-numeric value '" + cell +
                                        "' in numeric column '" + header[plan.col] + "'");
                    }
                }
                e.features[at++] = v;
            } else {
                if (!is_missing(cell)) {
                    auto it = std::lower_bound(plan.categories.begin(), plan.categories.end(), cell);
                    e.features[at + static_cast<int>(it - plan.categories.begin())] = 1.0;
                }
                at += static_cast<int>(plan.categories.size());
            }
        }
        ds.examples.push_back(std::move(e));
    }
    return ds;
}

void write_csv(const RawTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << (i ? "," : "") << table.header[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << "\n";
    }
    if (!out) throw DataError("write failed for " + path.string());
}

RawTable generate_balance_table() {
    RawTable t;
    t.header = {"class", "left_weight", "left_distance", "right_weight", "right_distance"};
    for (int lw = 1; lw <= 5; ++lw) {
        for (int ld = 1; ld <= 5; ++ld) {
            for (int rw = 1; rw <= 5; ++rw) {
                for (int rd = 1; rd <= 5; ++rd) {
                    const int left = lw * ld;
                    const int right = rw * rd;
                    const char* cls = left > right ? "L" : (left < right ? "R" : "B");
                    t.rows.push_back({cls, std::to_string(lw), std::to_string(ld), std::to_string(rw),
                                      std::to_string(rd)});
                }
            }
        }
    }
    return t;
}

namespace {

// Rule model behind the car table. Attribute indices ascend with quality.
int car_price(int buying, int maint) {
    static const int table[4][4] = {
        {0, 0, 1, 1},
        {0, 1, 1, 2},
        {1, 1, 1, 3},
        {1, 2, 3, 3},
    };
    return table[buying][maint];
}

int car_comfort(int doors, int persons, int boot) {
    if (persons == 0) return 0;  // two seats never comfortable enough
    static const int table[4][2][3] = {
        {{0, 1, 1}, {1, 1, 1}},
        {{1, 1, 2}, {1, 2, 2}},
        {{1, 2, 2}, {2, 2, 2}},
        {{1, 2, 2}, {2, 2, 2}},
    };
    return table[doors][persons - 1][boot];
}

int car_tech(int comfort, int safety) {
    static const int table[3][3] = {
        {0, 0, 0},
        {0, 1, 2},
        {0, 2, 3},
    };
    return table[comfort][safety];
}

int car_class(int price, int tech) {
    static const int table[4][4] = {
        {0, 0, 0, 0},
        {0, 0, 1, 1},
        {0, 1, 1, 3},
        {0, 1, 2, 3},
    };
    return table[price][tech];
}

}  // namespace

RawTable generate_cars_table() {
    static const char* buying_v[] = {"vhigh", "high", "med", "low"};
    static const char* maint_v[] = {"vhigh", "high", "med", "low"};
    static const char* doors_v[] = {"2", "3", "4", "5more"};
    static const char* persons_v[] = {"2", "4", "more"};
    static const char* boot_v[] = {"small", "med", "big"};
    static const char* safety_v[] = {"low", "med", "high"};
    static const char* class_v[] = {"unacc", "acc", "good", "vgood"};

    RawTable t;
    t.header = {"class", "buying", "maint", "doors", "persons", "lug_boot", "safety"};
    for (int b = 0; b < 4; ++b)
        for (int m = 0; m < 4; ++m)
            for (int d = 0; d < 4; ++d)
                for (int p = 0; p < 3; ++p)
                    for (int l = 0; l < 3; ++l)
                        for (int s = 0; s < 3; ++s) {
                            const int cls = car_class(car_price(b, m), car_tech(car_comfort(d, p, l), s));
                            t.rows.push_back({class_v[cls], buying_v[b], maint_v[m], doors_v[d],
                                              persons_v[p], boot_v[l], safety_v[s]});
                        }
    return t;
}

namespace {

Dataset generate_and_ingest(const RawTable& table, const std::filesystem::path& dir, const char* file) {
    std::filesystem::create_directories(dir);
    const auto path = dir / file;
    write_csv(table, path);
    DatasetSpec spec;
    spec.path = path;
    spec.label_column = "class";
    return ingest_csv(spec);
}

}  // namespace

Dataset make_balance_dataset(const std::filesystem::path& dir) {
    return generate_and_ingest(generate_balance_table(), dir, "balance.csv");
}

Dataset make_cars_dataset(const std::filesystem::path& dir) {
    return generate_and_ingest(generate_cars_table(), dir, "cars.csv");
}

}  // namespace mcboost::harness

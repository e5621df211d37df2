#include "pbs/csv.hpp"

#include <cstdio>
#include <fstream>

namespace pbs::csv {

std::string format_value(const Value& v) {
    if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
    if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", std::get<double>(v));
    return buf;
}

void write_csv(const std::vector<Row>& rows, const std::vector<std::string>& columns,
               const std::string& schema, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_csv: cannot open " + path);
    out << "# schema: " << schema << "\n";
    for (size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const Row& row : rows) {
        if (row.size() != columns.size())
            throw InvalidArgument("write_csv: row width does not match schema");
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i]);
        out << "\n";
    }
    out.flush();
    if (!out) throw Error("write_csv: I/O failure writing " + path);
}

}  // namespace pbs::csv

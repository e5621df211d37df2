#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pbs/types.hpp"

namespace pbs::csv {

using Value = std::variant<double, long long, std::string>;
using Row = std::vector<Value>;

// UTF-8, '\n' endings, '.' decimal separator, 12 significant digits for doubles.
// The schema string is embedded as a leading comment line so emitted files are
// self-describing and byte-stable.
void write_csv(const std::vector<Row>& rows, const std::vector<std::string>& columns,
               const std::string& schema, const std::string& path);

std::string format_value(const Value& v);

}  // namespace pbs::csv

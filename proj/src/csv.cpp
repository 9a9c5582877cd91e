#include "radfriction/csv.hpp"

#include <stdexcept>

namespace radfriction {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : n_columns_(columns.size()) {
    f_ = std::fopen(path.c_str(), "w");
    if (!f_) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < columns.size(); ++i)
        std::fprintf(f_, "%s%s", i ? "," : "", columns[i].c_str());
    std::fprintf(f_, "\n");
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_) throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(f_, "%s%s", i ? "," : "", format_double(values[i]).c_str());
    std::fprintf(f_, "\n");
}

} // namespace radfriction

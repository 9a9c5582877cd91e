#ifndef RADFRICTION_CSV_HPP
#define RADFRICTION_CSV_HPP

#include <cstdio>
#include <string>
#include <vector>

namespace radfriction {

// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

// Deterministic CSV emission: fixed column order, fixed float formatting.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);

private:
    std::FILE* f_ = nullptr;
    std::size_t n_columns_ = 0;
};

} // namespace radfriction

#endif

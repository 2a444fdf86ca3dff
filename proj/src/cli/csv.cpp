#include <cstdio>
#include <ostream>

#include "abring/cli.hpp"

namespace abring::cli {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const SpectrumTable& table) {
    os << kCsvHeader;
    if (table.has_discrepancy) os << ",discrepancy";
    os << '\n';
    for (const auto& row : table.rows) {
        os << format_double(row.x) << ',' << format_double(row.T) << ',' << format_double(row.G)
           << ',' << format_double(row.tau.real()) << ',' << format_double(row.tau.imag()) << ','
           << format_double(row.r.real()) << ',' << format_double(row.r.imag()) << ','
           << (row.singular ? 1 : 0);
        if (table.has_discrepancy) os << ',' << format_double(row.discrepancy);
        os << '\n';
    }
}

}  // namespace abring::cli

// SPDX-License-Identifier: Apache-2.0

#include "stdd/csv.hpp"

#include <cstdio>

#include "stdd/errors.hpp"

namespace stdd {

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary)
{
    if (!out_) throw ParamError("CsvWriter: cannot open '" + path + "'");
}

static bool needs_quoting(const std::string& s)
{
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out_ << ',';
        if (needs_quoting(cells[i])) {
            out_ << '"';
            for (char c : cells[i]) {
                if (c == '"') out_ << '"';
                out_ << c;
            }
            out_ << '"';
        } else {
            out_ << cells[i];
        }
    }
    out_ << "\r\n";
    out_.flush();
}

std::string CsvWriter::num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string CsvWriter::num(long long v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", v);
    return buf;
}

}  // namespace stdd

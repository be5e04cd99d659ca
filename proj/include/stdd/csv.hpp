// SPDX-License-Identifier: Apache-2.0
//
// Minimal RFC 4180 CSV writer: CRLF line endings, UTF-8, '.' decimal point,
// mandatory header row, quoting only when a cell needs it. Numbers are
// written with 17 significant digits so replays are byte-identical.
#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace stdd {

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void row(const std::vector<std::string>& cells);

    static std::string num(double v);
    static std::string num(long long v);

private:
    std::ofstream out_;
};

}  // namespace stdd

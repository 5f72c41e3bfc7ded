#pragma once

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace modeconv {

// CSV with a header row and full-double-precision numeric cells, so repeated
// runs with the same seed are byte-identical.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }

    void header(std::initializer_list<std::string> cols) {
        bool first = true;
        for (const auto& c : cols) {
            if (!first) out_ << ',';
            out_ << c;
            first = false;
        }
        out_ << '\n';
    }

    void row(std::initializer_list<double> vals) {
        bool first = true;
        char buf[32];
        for (double v : vals) {
            if (!first) out_ << ',';
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out_ << buf;
            first = false;
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

// Reads numeric CSV, skipping a header row if the first field is not a number.
inline std::vector<std::vector<double>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first_line = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first_line) {
                first_line = false;
                continue; // header
            }
            throw std::runtime_error("non-numeric CSV cell in " + path);
        }
        first_line = false;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace modeconv

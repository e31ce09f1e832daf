#pragma once

// Deterministic CSV emission: fixed columns per report, 17 significant
// digits for reals, a versioned header comment and a timestamp line that
// consumers are expected to skip when diffing.

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace heatpath {

inline std::string csv_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << std::scientific << v;
    return os.str();
}

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& report_name,
              const std::vector<std::string>& columns, int version = 1)
        : out_(path) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
        out_ << "# " << report_name << " v" << version << "\n";
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        out_ << "# timestamp " << now << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
        ncols_ = columns.size();
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != ncols_) throw std::runtime_error("CsvWriter: column count mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

  private:
    std::ofstream out_;
    std::size_t ncols_ = 0;
};

}  // namespace heatpath

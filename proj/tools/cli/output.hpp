#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tbdecay/csv.hpp"

namespace tbdecay::cli {

enum class Format { Csv, Json };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ordered scalar summary ("quantity,value").
using SummaryValue = std::variant<double, std::string>;
using Summary = std::vector<std::pair<std::string, SummaryValue>>;

// Writes to `path`, or to stdout when path is empty or "-".
void write_table(const std::string& path, Format format, const io::CsvTable& table, const Summary& meta = {});
void write_summary(const std::string& path, Format format, const Summary& summary);
void write_matrix_file(const std::filesystem::path& path, const std::string& corner, const std::vector<double>& columns,
                       const std::vector<double>& rows, const std::vector<double>& values);

std::string num(double v);

}  // namespace tbdecay::cli

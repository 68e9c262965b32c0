#include "output.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <cmath>

#include "json.hpp"

namespace tbdecay::cli {

namespace {

template <typename Writer>
void with_stream(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) return io::format_number(v);  // JSON has no inf/nan literals
  return std::stod(io::format_number(v));
}

std::string text(const SummaryValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return io::format_number(*d);
  return std::get<std::string>(v);
}

nlohmann::ordered_json json_value(const SummaryValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return json_number(*d);
  return std::get<std::string>(v);
}

}  // namespace

std::string num(double v) { return io::format_number(v); }

void write_table(const std::string& path, Format format, const io::CsvTable& table, const Summary& meta) {
  with_stream(path, [&](std::ostream& out) {
    if (format == Format::Csv) {
      io::write_csv(out, table);
      return;
    }
    nlohmann::ordered_json j;
    if (!meta.empty()) {
      nlohmann::ordered_json m = nlohmann::ordered_json::object();
      for (const auto& [k, v] : meta) m[k] = json_value(v);
      j["meta"] = m;
    }
    j["columns"] = table.header;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (double v : r) row.push_back(json_number(v));
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    out << j.dump(1) << '\n';
  });
}

void write_summary(const std::string& path, Format format, const Summary& summary) {
  with_stream(path, [&](std::ostream& out) {
    if (format == Format::Csv) {
      out << "quantity,value\n";
      for (const auto& [k, v] : summary) out << k << ',' << text(v) << '\n';
      return;
    }
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary) j[k] = json_value(v);
    out << j.dump(1) << '\n';
  });
}

void write_matrix_file(const std::filesystem::path& path, const std::string& corner, const std::vector<double>& columns,
                       const std::vector<double>& rows, const std::vector<double>& values) {
  with_stream(path.string(), [&](std::ostream& out) { io::write_matrix(out, corner, columns, rows, values); });
}

}  // namespace tbdecay::cli

#include "csv.hpp"

#include <fstream>

#include "format.hpp"

namespace nlsscat::cli {
namespace {

std::string cell(double v) { return format_double(v); }

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& h : header) out << "# " << h << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_trajectory_csv(const std::filesystem::path& path, const std::vector<ObservableRow>& rows,
                          const std::vector<std::string>& header) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const auto& r : rows) {
    cells.push_back({cell(r.t), cell(r.mass), cell(r.energy), cell(r.grad_l2_sq), cell(r.l_alpha2),
                     cell(r.variance), cell(r.pt_norm_sq), cell(r.n_monitor), cell(r.e1), cell(r.e2),
                     cell(r.boundary_fraction)});
  }
  write_table(path, header, trajectory_columns(), cells);
}

std::vector<ObservableRow> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<ObservableRow> rows;
  std::string line;
  bool seen_columns = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto parts = split(line);
    if (!seen_columns) {
      if (parts != trajectory_columns()) throw IoError(path.string() + ": unexpected column line");
      seen_columns = true;
      continue;
    }
    if (parts.size() != trajectory_columns().size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": wrong cell count");
    }
    std::vector<std::optional<double>> v;
    for (const auto& p : parts) {
      if (p.empty()) {
        v.emplace_back();
        continue;
      }
      const auto d = parse_double(p);
      if (!d) throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + p + "'");
      v.emplace_back(*d);
    }
    auto req = [&](std::size_t i) {
      if (!v[i]) throw IoError(path.string() + ":" + std::to_string(line_no) + ": missing value");
      return *v[i];
    };
    ObservableRow r;
    r.t = req(0);
    r.mass = req(1);
    r.energy = req(2);
    r.grad_l2_sq = req(3);
    r.l_alpha2 = req(4);
    r.variance = req(5);
    r.pt_norm_sq = req(6);
    r.n_monitor = req(7);
    r.e1 = v[8];
    r.e2 = v[9];
    r.boundary_fraction = req(10);
    rows.push_back(r);
  }
  return rows;
}

void write_profile_csv(const std::filesystem::path& path, const Field& f,
                       const std::vector<std::string>& header) {
  const Grid& g = f.grid();
  const int d = g.dim();
  static const char* const axes[] = {"x", "y", "z"};
  std::vector<std::string> columns(axes, axes + d);
  columns.push_back("re");
  columns.push_back("im");
  const auto x = g.coords();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::vector<std::string> row;
    for (int a = 0; a < d; ++a) row.push_back(cell(x[g.axis_index(i, a)]));
    row.push_back(cell(f[i].real()));
    row.push_back(cell(f[i].imag()));
    rows.push_back(std::move(row));
  }
  write_table(path, header, columns, rows);
}

}  // namespace nlsscat::cli

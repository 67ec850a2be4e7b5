#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlsscat/grid.hpp"
#include "nlsscat/observables.hpp"

namespace nlsscat::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols = {
      "t", "mass", "energy", "grad_l2_sq", "l_alpha2", "variance",
      "pt_norm_sq", "n_monitor", "e1", "e2", "boundary_fraction"};
  return cols;
}

/// Comment header, column line, then rows. Cells are written verbatim, so
/// callers format numbers with format_double. Empty cells are allowed.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows);

void write_trajectory_csv(const std::filesystem::path& path, const std::vector<ObservableRow>& rows,
                          const std::vector<std::string>& header);

/// Inverse of write_trajectory_csv. valid is not stored and reads back true.
std::vector<ObservableRow> read_trajectory_csv(const std::filesystem::path& path);

/// Grid coordinates followed by re, im.
void write_profile_csv(const std::filesystem::path& path, const Field& f,
                       const std::vector<std::string>& header);

}  // namespace nlsscat::cli

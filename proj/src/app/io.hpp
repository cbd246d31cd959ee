#ifndef VORTIGEN_IO_HPP_
#define VORTIGEN_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fields.hpp"
#include "moc.hpp"

namespace vortigen::io {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_double(double v);

// Serializes with 2-space indentation; floats through format_double,
// non-finite numbers as null.
std::string dump_json(const Json& j);

// Writes to a sibling temporary and renames it over `path`.
void write_atomic(const fs::path& path, std::string_view content);

std::string read_text(const fs::path& path);

// Field CSV with header x,y,rho,u,v,p. The grid is inferred from the sorted
// unique coordinates. A manifest {"snapshots": [{"t": .., "file": ..}, ..],
// "current": k} adds a time series; snapshot paths are relative to it.
FieldSet load_fields(const fs::path& csv,
                     const std::optional<fs::path>& manifest = std::nullopt);

// Grid plus named columns of a CSV whose first two columns are x,y.
struct GridTable {
  StructuredGrid2D grid;
  std::vector<std::vector<double>> columns;
};
GridTable load_grid_table(const fs::path& csv,
                          const std::vector<std::string>& value_columns);

// Initial data for the characteristics solver: header x,rho,u,p.
std::vector<moc::CharNode> load_initial_data(const fs::path& csv, double gamma);

// t,x,u,a,s,level,index,cplus_parent,cminus_parent,c0_parent,c0_weight
std::string net_csv(const moc::CharNet& net);

}  // namespace vortigen::io

#endif  // VORTIGEN_IO_HPP_

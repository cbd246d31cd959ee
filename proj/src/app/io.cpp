#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "errors.hpp"

namespace vortigen::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void dump_string(std::string& out, const std::string& s) {
  out += Json(s).dump();
}

void dump_value(std::string& out, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_string(out, it.key());
        out += ": ";
        dump_value(out, it.value(), depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        dump_value(out, j[k], depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_number(const std::string& cell, const fs::path& file,
                    std::size_t line) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || first == last) {
    throw Error(ErrorCode::kParseError, file.string() + ":" +
                                            std::to_string(line) +
                                            ": not a number: '" + cell + "'");
  }
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kParseError, file.string() + ":" +
                                            std::to_string(line) +
                                            ": non-finite value");
  }
  return v;
}

struct Table {
  std::vector<std::vector<double>> rows;
};

Table read_table(const fs::path& csv, const std::vector<std::string>& header) {
  std::istringstream in(read_text(csv));
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  Table t;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (!have_header) {
      if (cells != header) {
        std::string want;
        for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
        throw Error(ErrorCode::kParseError,
                    csv.string() + ": header must be '" + want + "'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  csv.string() + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(header.size()) + " columns, got " +
                      std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      row[c] = parse_number(cells[c], csv, lineno);
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) {
    throw Error(ErrorCode::kParseError, csv.string() + ": empty file");
  }
  return t;
}

struct Axis {
  double x0 = 0.0;
  double h = 0.0;
  int n = 0;
};

Axis infer_axis(std::vector<double> v, const char* name, const fs::path& csv) {
  std::sort(v.begin(), v.end());
  const double span = v.back() - v.front();
  const double merge = 1e-9 * std::max(span, 1e-300);
  std::vector<double> uniq;
  for (double c : v) {
    if (uniq.empty() || c - uniq.back() > merge) uniq.push_back(c);
  }
  if (uniq.size() < 3) {
    throw Error(ErrorCode::kGridInferenceError,
                csv.string() + ": fewer than 3 distinct " + name + " values");
  }
  Axis a;
  a.n = static_cast<int>(uniq.size());
  a.x0 = uniq.front();
  a.h = (uniq.back() - uniq.front()) / (a.n - 1);
  for (int k = 1; k < a.n; ++k) {
    double d = uniq[k] - uniq[k - 1];
    if (std::abs(d - a.h) > 1e-9 * a.h) {
      throw Error(ErrorCode::kGridInferenceError,
                  csv.string() + ": irregular " + name + " spacing near " +
                      format_double(uniq[k]));
    }
  }
  return a;
}

GridTable build_grid_table(const Table& t, const fs::path& csv) {
  if (t.rows.empty()) {
    throw Error(ErrorCode::kGridInferenceError, csv.string() + ": no rows");
  }
  std::vector<double> xs, ys;
  xs.reserve(t.rows.size());
  ys.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    xs.push_back(r[0]);
    ys.push_back(r[1]);
  }
  Axis ax = infer_axis(xs, "x", csv);
  Axis ay = infer_axis(ys, "y", csv);
  GridTable g;
  g.grid = StructuredGrid2D{ax.n, ay.n, ax.x0, ay.x0, ax.h, ay.h};
  const std::size_t ncol = t.rows.front().size() - 2;
  if (t.rows.size() != g.grid.size()) {
    throw Error(ErrorCode::kGridInferenceError,
                csv.string() + ": " + std::to_string(t.rows.size()) +
                    " rows for a " + std::to_string(ax.n) + "x" +
                    std::to_string(ay.n) + " grid");
  }
  g.columns.assign(ncol, std::vector<double>(g.grid.size(), 0.0));
  std::vector<std::uint8_t> seen(g.grid.size(), 0);
  for (const auto& r : t.rows) {
    double fi = (r[0] - ax.x0) / ax.h;
    double fj = (r[1] - ay.x0) / ay.h;
    long i = std::lround(fi), j = std::lround(fj);
    if (std::abs(fi - i) > 1e-6 || std::abs(fj - j) > 1e-6) {
      throw Error(ErrorCode::kGridInferenceError,
                  csv.string() + ": point off the grid");
    }
    std::size_t n = g.grid.index(static_cast<int>(i), static_cast<int>(j));
    if (seen[n]) {
      throw Error(ErrorCode::kGridInferenceError,
                  csv.string() + ": duplicate node (" + format_double(r[0]) +
                      ", " + format_double(r[1]) + ")");
    }
    seen[n] = 1;
    for (std::size_t c = 0; c < ncol; ++c) g.columns[c][n] = r[c + 2];
  }
  return g;
}

bool same_grid(const StructuredGrid2D& a, const StructuredGrid2D& b) {
  auto close = [](double p, double q, double h) {
    return std::abs(p - q) <= 1e-9 * h;
  };
  return a.nx == b.nx && a.ny == b.ny && close(a.x0, b.x0, a.hx) &&
         close(a.y0, b.y0, a.hy) && close(a.hx, b.hx, a.hx) &&
         close(a.hy, b.hy, a.hy);
}

const std::vector<std::string> kFieldHeader = {"x", "y", "rho", "u", "v", "p"};

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_value(out, j, 0);
  out += "\n";
  return out;
}

void write_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIoError, "cannot open " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kIoError, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot replace " + path.string());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GridTable load_grid_table(const fs::path& csv,
                          const std::vector<std::string>& value_columns) {
  std::vector<std::string> header = {"x", "y"};
  header.insert(header.end(), value_columns.begin(), value_columns.end());
  return build_grid_table(read_table(csv, header), csv);
}

FieldSet load_fields(const fs::path& csv,
                     const std::optional<fs::path>& manifest) {
  GridTable g = build_grid_table(read_table(csv, kFieldHeader), csv);
  FieldSet f;
  f.grid = g.grid;
  f.rho = std::move(g.columns[0]);
  f.u = std::move(g.columns[1]);
  f.v = std::move(g.columns[2]);
  f.p = std::move(g.columns[3]);
  if (manifest) {
    Json m;
    try {
      m = Json::parse(read_text(*manifest));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParseError, manifest->string() + ": " + e.what());
    }
    if (!m.is_object() || !m.contains("snapshots") ||
        !m["snapshots"].is_array()) {
      throw Error(ErrorCode::kParseError,
                  manifest->string() + ": expected a 'snapshots' array");
    }
    const fs::path base = manifest->parent_path();
    for (const auto& entry : m["snapshots"]) {
      if (!entry.is_object() || !entry.contains("t") ||
          !entry["t"].is_number() || !entry.contains("file") ||
          !entry["file"].is_string()) {
        throw Error(ErrorCode::kParseError,
                    manifest->string() + ": snapshot needs numeric 't' and 'file'");
      }
      Snapshot s;
      s.t = entry["t"].get<double>();
      if (!f.snapshots.empty() && !(s.t > f.snapshots.back().t)) {
        throw Error(ErrorCode::kParseError,
                    manifest->string() + ": snapshot times must increase");
      }
      fs::path file = base / entry["file"].get<std::string>();
      GridTable sg = build_grid_table(read_table(file, kFieldHeader), file);
      if (!same_grid(sg.grid, f.grid)) {
        throw Error(ErrorCode::kShapeMismatch,
                    file.string() + ": grid differs from " + csv.string());
      }
      s.rho = std::move(sg.columns[0]);
      s.u = std::move(sg.columns[1]);
      s.v = std::move(sg.columns[2]);
      s.p = std::move(sg.columns[3]);
      f.snapshots.push_back(std::move(s));
    }
    if (m.contains("current")) {
      if (!m["current"].is_number_integer() || m["current"].get<long>() < 0) {
        throw Error(ErrorCode::kParseError,
                    manifest->string() + ": 'current' must be an index");
      }
      f.current = m["current"].get<std::size_t>();
    }
  }
  f.validate();
  for (std::size_t n = 0; n < f.grid.size(); ++n) {
    if (!(f.rho[n] > 0.0) || !(f.p[n] > 0.0)) {
      throw Error(ErrorCode::kNonPhysicalState,
                  csv.string() + ": rho and p must be positive");
    }
  }
  for (const auto& s : f.snapshots) {
    for (std::size_t n = 0; n < f.grid.size(); ++n) {
      if (!(s.rho[n] > 0.0) || !(s.p[n] > 0.0)) {
        throw Error(ErrorCode::kNonPhysicalState,
                    "snapshot at t = " + format_double(s.t) +
                        ": rho and p must be positive");
      }
    }
  }
  return f;
}

std::vector<moc::CharNode> load_initial_data(const fs::path& csv,
                                             double gamma) {
  Table t = read_table(csv, {"x", "rho", "u", "p"});
  std::vector<moc::CharNode> nodes;
  nodes.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    if (!(r[1] > 0.0) || !(r[3] > 0.0)) {
      throw Error(ErrorCode::kNonPhysicalState,
                  csv.string() + ": rho and p must be positive");
    }
    nodes.push_back(moc::node_from_primitive(r[0], r[1], r[2], r[3], gamma));
  }
  return nodes;
}

std::string net_csv(const moc::CharNet& net) {
  std::string out =
      "t,x,u,a,s,level,index,cplus_parent,cminus_parent,c0_parent,c0_weight\n";
  for (std::size_t k = 0; k < net.levels.size(); ++k) {
    for (std::size_t i = 0; i < net.levels[k].size(); ++i) {
      const auto& n = net.levels[k][i];
      moc::NodeLinks l;
      if (k < net.links.size() && i < net.links[k].size()) l = net.links[k][i];
      out += format_double(n.t) + ',' + format_double(n.x) + ',' +
             format_double(n.u) + ',' + format_double(n.a) + ',' +
             format_double(n.s) + ',' + std::to_string(k) + ',' +
             std::to_string(i) + ',' + std::to_string(l.cplus) + ',' +
             std::to_string(l.cminus) + ',' + std::to_string(l.c0) + ',' +
             format_double(l.c0_weight) + '\n';
    }
  }
  return out;
}

}  // namespace vortigen::io

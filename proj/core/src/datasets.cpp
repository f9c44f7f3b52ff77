#include "ddmls/datasets.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

namespace ddmls {

NodeSet regular_grid(int level) {
  if (level < 1 || level > 14) throw Error(ErrorCode::InvalidArgument, "grid level must lie in [1, 14]");
  const int cells = 1 << level;
  const double spacing = 1.0 / static_cast<double>(cells);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(cells + 1) * static_cast<std::size_t>(cells + 1));
  for (int i = 0; i <= cells; ++i) {
    for (int j = 0; j <= cells; ++j) points.emplace_back(i * spacing, j * spacing);
  }
  std::vector<double> values(points.size(), 0.0);
  return NodeSet(std::move(points), std::move(values), Box::unit(2));
}

double radical_inverse(std::uint64_t index, std::uint32_t base) {
  const double inv_base = 1.0 / static_cast<double>(base);
  double scale = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv_base;
  }
  return result;
}

NodeSet halton_points(std::size_t count) {
  if (count == 0) throw Error(ErrorCode::EmptyNodeSet, "Halton set of size 0");
  std::vector<Point> points;
  points.reserve(count);
  for (std::uint64_t i = 1; i <= count; ++i) points.emplace_back(radical_inverse(i, 2), radical_inverse(i, 3));
  std::vector<double> values(count, 0.0);
  return NodeSet(std::move(points), std::move(values), Box::unit(2));
}

// ---------------------------------------------------------------------------

double franke(const Point& p) {
  const double x = 9.0 * p.x();
  const double y = 9.0 * p.y();
  return 0.75 * std::exp(-0.25 * ((x - 2.0) * (x - 2.0) + (y - 2.0) * (y - 2.0))) +
         0.75 * std::exp(-(x + 1.0) * (x + 1.0) / 49.0 - (y + 1.0) / 10.0) +
         0.5 * std::exp(-0.25 * ((x - 7.0) * (x - 7.0) + (y - 3.0) * (y - 3.0))) -
         0.2 * std::exp(-(x - 4.0) * (x - 4.0) - (y - 7.0) * (y - 7.0));
}

TestFunction::TestFunction(Kind kind, std::string name, Field level_set, Field first, Field second)
    : kind_(kind),
      name_(std::move(name)),
      level_set_(std::move(level_set)),
      first_(std::move(first)),
      second_(std::move(second)) {}

TestFunction TestFunction::franke() {
  return TestFunction(Kind::Franke, "franke", nullptr, [](const Point& p) { return ddmls::franke(p); }, nullptr);
}

TestFunction TestFunction::glevin() {
  TestFunction fn(
      Kind::GLevin, "glevin",
      [](const Point& p) {
        const double dx = p.x() - 0.5;
        const double dy = p.y() - 0.5;
        return dx * dx + dy * dy - 0.1;
      },
      [](const Point& p) {
        const double x = p.x();
        const double y = p.y();
        return -(x + y + 1.0) * std::cos(4.0 * x) + std::sin(4.0 * (x + y));
      },
      [](const Point& p) {
        const double dx = p.x() - 0.5;
        const double dy = p.y() - 0.5;
        return std::exp(-10.0 * (dx * dx + dy * dy));
      });
  fn.circle_ = {{Point(0.5, 0.5), std::sqrt(0.1)}};
  return fn;
}

TestFunction TestFunction::zcircle() {
  TestFunction fn(
      Kind::ZCircle, "zcircle",
      [](const Point& p) {
        const double dx = p.x() - 0.5;
        const double dy = p.y() - 0.5;
        return dx * dx + dy * dy - 0.25 * 0.25;
      },
      [](const Point& p) { return std::cos(p.x() * p.y()); },
      [](const Point& p) { return std::sin(p.x() * p.y()); });
  fn.circle_ = {{Point(0.5, 0.5), 0.25}};
  return fn;
}

TestFunction TestFunction::piecewise_franke(double constant) {
  if (!std::isfinite(constant)) throw Error(ErrorCode::InvalidArgument, "piecewise Franke constant must be finite");
  char label[64];
  std::snprintf(label, sizeof label, "pfranke:%.17g", constant);
  TestFunction fn(
      Kind::PiecewiseFranke, label,
      [](const Point& p) { return 0.25 * 0.25 - p.x() * p.x() - p.y() * p.y(); },
      [](const Point& p) { return ddmls::franke(p); },
      [constant](const Point& p) { return ddmls::franke(p) + constant; });
  fn.circle_ = {{Point(0.0, 0.0), 0.25}};
  return fn;
}

TestFunction TestFunction::custom(Field level_set, Field first, Field second, std::string name) {
  if (!level_set || !first || !second) {
    throw Error(ErrorCode::InvalidArgument, "custom test function needs a level set and two branches");
  }
  return TestFunction(Kind::Custom, std::move(name), std::move(level_set), std::move(first), std::move(second));
}

TestFunction TestFunction::parse(std::string_view spec) {
  if (spec == "franke") return franke();
  if (spec == "glevin") return glevin();
  if (spec == "zcircle") return zcircle();
  if (spec == "pfranke") return piecewise_franke();
  constexpr std::string_view prefix = "pfranke:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string_view rest = spec.substr(prefix.size());
    double c = 0.0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), c);
    if (ec == std::errc() && ptr == rest.data() + rest.size() && !rest.empty()) return piecewise_franke(c);
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown test function '" + std::string(spec) + "' (expected franke, glevin, zcircle, pfranke:<c>)");
}

double TestFunction::operator()(const Point& x) const {
  if (x.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "test functions are defined on the plane");
  if (!level_set_) return first_(x);
  return level_set_(x) >= 0.0 ? first_(x) : second_(x);
}

std::optional<double> TestFunction::level_set(const Point& x) const {
  if (!level_set_) return std::nullopt;
  return level_set_(x);
}

std::optional<double> TestFunction::interface_distance(const Point& x) const {
  if (!level_set_) return std::nullopt;
  if (circle_) return std::abs(distance(x, circle_->first) - circle_->second);
  constexpr double step = 1e-6;
  const double g = level_set_(x);
  const double gx = (level_set_(Point(x.x() + step, x.y())) - level_set_(Point(x.x() - step, x.y()))) / (2 * step);
  const double gy = (level_set_(Point(x.x(), x.y() + step)) - level_set_(Point(x.x(), x.y() - step))) / (2 * step);
  const double grad = std::hypot(gx, gy);
  if (!(grad > 0.0)) return g == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(g) / grad;
}

double eval_test_function(const TestFunction& fn, const Point& x) { return fn(x); }

NodeSet sample(const TestFunction& fn, const NodeSet& nodes) {
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = fn(nodes.point(i));
  return nodes.with_values(std::move(values));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    parse_error(line, "'" + std::string(field) + "' is not a finite number");
  }
  return v;
}

}  // namespace

NodeSet read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "line 1: missing header");
  ++line_no;
  const auto header = split_fields(trim(line));
  int dim = 0;
  if (header.size() == 3 && trim(header[0]) == "x" && trim(header[1]) == "y" && trim(header[2]) == "f") {
    dim = 2;
  } else if (header.size() == 2 && trim(header[0]) == "x" && trim(header[1]) == "f") {
    dim = 1;
  } else {
    parse_error(line_no, "expected header 'x,y,f' or 'x,f'");
  }

  std::vector<Point> points;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto fields = split_fields(row);
    if (fields.size() != static_cast<std::size_t>(dim + 1)) {
      parse_error(line_no, "expected " + std::to_string(dim + 1) + " fields, got " + std::to_string(fields.size()));
    }
    if (dim == 2) {
      points.emplace_back(parse_number(fields[0], line_no), parse_number(fields[1], line_no));
    } else {
      points.emplace_back(parse_number(fields[0], line_no));
    }
    values.push_back(parse_number(fields[dim], line_no));
  }
  if (points.empty()) throw Error(ErrorCode::EmptyNodeSet, "no data rows");
  return NodeSet::with_bounding_box(std::move(points), std::move(values));
}

NodeSet load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_csv(in);
}

void write_csv(const NodeSet& nodes, std::ostream& out) {
  out << (nodes.dim() == 2 ? "x,y,f\n" : "x,f\n");
  char buf[128];
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Point& p = nodes.point(i);
    if (nodes.dim() == 2) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.x(), p.y(), nodes.value(i));
    } else {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x(), nodes.value(i));
    }
    out << buf;
  }
}

void save_csv(const NodeSet& nodes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_csv(nodes, out);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace ddmls

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "ddmls/geometry.hpp"

namespace ddmls {

// (2^level + 1)^2 nodes {(i/2^level, j/2^level)} on [0,1]^2, values zero.
NodeSet regular_grid(int level);

// Radical inverse of `index` in `base` (digits mirrored about the point).
double radical_inverse(std::uint64_t index, std::uint32_t base);

// Halton points with bases (2, 3) for indices 1..count, on the domain [0,1]^2.
NodeSet halton_points(std::size_t count);

// Scalar test data on [0,1]^2, optionally split by a level set gamma into
// the region gamma >= 0 (first branch) and gamma < 0 (second branch).
class TestFunction {
 public:
  using Field = std::function<double(const Point&)>;

  enum class Kind { Franke, GLevin, ZCircle, PiecewiseFranke, Custom };

  static TestFunction franke();
  // -(x+y+1)cos(4x) + sin(4(x+y)) outside the disc (x-.5)^2+(y-.5)^2 < 0.1,
  // exp(-10 r^2) inside.
  static TestFunction glevin();
  // cos(xy) outside the disc of radius 0.25 about (.5,.5), sin(xy) inside.
  static TestFunction zcircle();
  // Franke where 0.25^2 - x^2 - y^2 >= 0, Franke + constant elsewhere.
  static TestFunction piecewise_franke(double constant = 1.0);
  static TestFunction custom(Field level_set, Field first, Field second, std::string name = "custom");

  // Accepts franke, glevin, zcircle, pfranke and pfranke:<constant>.
  static TestFunction parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  bool has_interface() const noexcept { return static_cast<bool>(level_set_); }

  // Throws DimensionMismatch for non-2-D points.
  double operator()(const Point& x) const;

  // Level-set value; nullopt for smooth functions.
  std::optional<double> level_set(const Point& x) const;

  // Euclidean distance from x to the discontinuity curve: exact for the
  // built-in circles, |gamma| / |grad gamma| for custom level sets.
  std::optional<double> interface_distance(const Point& x) const;

 private:
  TestFunction(Kind kind, std::string name, Field level_set, Field first, Field second);

  Kind kind_;
  std::string name_;
  Field level_set_;
  Field first_;
  Field second_;
  // Circle (center, radius) for the built-in piecewise functions.
  std::optional<std::pair<Point, double>> circle_;
};

double franke(const Point& x);

double eval_test_function(const TestFunction& fn, const Point& x);

// Same nodes with values[i] = fn(points[i]).
NodeSet sample(const TestFunction& fn, const NodeSet& nodes);

// CSV with header `x,y,f` (or `x,f` in 1-D). The domain of the loaded set is
// the bounding box of its points. Throws ParseError (1-based line number in
// the message), DuplicatePoint or IoError.
NodeSet read_csv(std::istream& in);
NodeSet load_csv(const std::filesystem::path& path);

// Writes 17 significant digits per field, LF line endings.
void write_csv(const NodeSet& nodes, std::ostream& out);
void save_csv(const NodeSet& nodes, const std::filesystem::path& path);

}  // namespace ddmls

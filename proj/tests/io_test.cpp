#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "skewdim/io.hpp"
#include "skewdim/util.hpp"

using namespace skewdim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (std::size_t pos = text.find("\r\n"); pos != std::string::npos;
       pos = text.find("\r\n", pos + 2))
    ++lines;
  return lines;
}

}  // namespace

TEST_CASE("doubles print shortest and round-trip") {
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(1024.0) == "1024");
  CHECK(format_double(-0.5) == "-0.5");
  std::mt19937_64 eng(99);
  for (int i = 0; i < 200; ++i) {
    double v = (u01(eng) - 0.5) * std::pow(10.0, static_cast<int>(eng() % 13) - 6);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("interval maps round-trip through JSON") {
  IntervalMap base = fixtures::ref_base();
  std::string text = interval_map_to_json(base);
  IntervalMap back = interval_map_from_json(text);
  CHECK(back.a() == base.a());
  CHECK(back.b() == base.b());
  CHECK(back.c() == base.c());
  CHECK(back.d() == base.d());
  for (int i : {1, 2}) {
    CHECK(back.branch(i).lo() == base.branch(i).lo());
    CHECK(back.branch(i).hi() == base.branch(i).hi());
    CHECK(back.branch(i).image_of_lo() == base.branch(i).image_of_lo());
    CHECK(back.branch(i).image_of_hi() == base.branch(i).image_of_hi());
  }
  CHECK(interval_map_to_json(back) == text);
}

TEST_CASE("tabulated branches keep their samples through JSON") {
  Branch curved = Branch::tabulated({{0.0, 0.0}, {0.1, 0.3}, {0.25, 0.7}, {0.4, 1.0}});
  IntervalMap base = IntervalMap::create(0.0, 1.0, 0.4, 0.6, curved,
                                         Branch::linear(0.6, 1.0, 0.0, 1.0));
  std::string text = interval_map_to_json(base);
  IntervalMap back = interval_map_from_json(text);
  CHECK(back.branch(1).kind() == Branch::Kind::tabulated);
  for (double x : {0.05, 0.17, 0.33}) CHECK(back.apply_T(x) == base.apply_T(x));
  CHECK(interval_map_to_json(back) == text);
}

TEST_CASE("skew systems round-trip for every fiber kind") {
  for (const SkewSystem& sys :
       {fixtures::ref_exact(), fixtures::ref_upper(), fixtures::ref_lower()}) {
    std::string text = skew_system_to_json(sys);
    SkewSystem back = skew_system_from_json(text);
    CHECK(back.lambda() == sys.lambda());
    CHECK(back.fiber().kind() == sys.fiber().kind());
    for (double x : {0.0, 0.2, 0.68, 1.0}) CHECK(back.fiber_value(x) == sys.fiber_value(x));
    CHECK(skew_system_to_json(back) == text);
  }
}

TEST_CASE("malformed JSON raises parse errors, bad geometry does not") {
  CHECK_THROWS_AS((void)interval_map_from_json("{"), json_parse_error);
  CHECK_THROWS_AS((void)interval_map_from_json("[1, 2]"), json_parse_error);
  CHECK_THROWS_AS((void)skew_system_from_json("{\"lambda\": 0.25}"), json_parse_error);

  std::string text = skew_system_to_json(fixtures::ref_exact());
  std::string bad_kind = text;
  bad_kind.replace(bad_kind.find("\"exact\""), 7, "\"fancy\"");
  CHECK_THROWS_AS((void)skew_system_from_json(bad_kind), json_parse_error);

  // c > d is well-formed JSON with impossible geometry: a domain error,
  // not a parse error.
  std::string crossed = interval_map_to_json(fixtures::ref_base());
  crossed.replace(crossed.find("\"c\": 0.4"), 8, "\"c\": 0.7");
  CHECK_THROWS_AS((void)interval_map_from_json(crossed), std::invalid_argument);
}

TEST_CASE("tabulated branch endpoints must agree with their samples") {
  std::string text = interval_map_to_json(IntervalMap::create(
      0.0, 1.0, 0.4, 0.6, Branch::tabulated({{0.0, 0.0}, {0.2, 0.6}, {0.4, 1.0}}),
      Branch::linear(0.6, 1.0, 0.0, 1.0)));
  std::string skewed = text;
  std::size_t pos = skewed.find("\"lo\": 0.0");
  REQUIRE(pos != std::string::npos);
  skewed.replace(pos, 9, "\"lo\": 0.05");
  CHECK_THROWS_AS((void)interval_map_from_json(skewed), json_parse_error);
}

TEST_CASE("cover CSV lists one row per band node") {
  // Dyadic band offsets keep every CSV field an exact short decimal.
  SkewSystem dyadic = SkewSystem::create(fixtures::ref_base(),
                                         FiberProfile::lower_const(0.5, 0.8125), 0.25);
  AttractorCover cover = build_cover(dyadic, 1, 3);
  std::string csv = cover_csv(cover);
  CHECK(csv.rfind("word,x,y_lo,y_hi\r\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + 2 * 3);
  CHECK(csv.find("1,0,0.375,0.625\r\n") != std::string::npos);
  CHECK(csv.find("2,0.5,0.6875,0.9375\r\n") != std::string::npos);
}

TEST_CASE("interval cover CSV matches the addressed intervals") {
  auto intervals = cantor_cover(fiber_ifs(fixtures::ref_lower()), 2);
  std::string csv = interval_cover_csv(intervals);
  CHECK(csv.rfind("word,lo,hi\r\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + intervals.size());
  CHECK(csv.find("12,0.59875,0.66125\r\n") != std::string::npos);
}

TEST_CASE("measure CSV carries codings when present") {
  EmpiricalMeasure em = sample_mu_l(fixtures::ref_lower(), Bernoulli::create(0.5), 5, 3, 12);
  std::string csv = measure_csv(em);
  CHECK(csv.rfind("x,y,word\r\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + em.size());
  CHECK(csv.find(em.words[0].str() + "\r\n") != std::string::npos);

  EmpiricalMeasure control = sample_uniform_square(fixtures::ref_lower(), 4, 12);
  std::string control_csv = measure_csv(control);
  CHECK(count_lines(control_csv) == 1 + control.size());
  CHECK(control_csv.find(",\r\n") != std::string::npos);
}

TEST_CASE("scales CSV lists the fitted pairs") {
  std::vector<double> scales{0.25, 0.125, 0.0625};
  std::vector<double> counts{12.0, 28.0, 60.0};
  DimensionFit fit = fit_dimension(scales, counts);
  std::string csv = scales_csv(fit);
  CHECK(csv == "epsilon,count\r\n0.25,12\r\n0.125,28\r\n0.0625,60\r\n");
}

TEST_CASE("cover SVG is a standalone drawing with one polyline pair per band") {
  AttractorCover cover = build_cover(fixtures::ref_exact(), 3, 65);
  std::string svg = cover_svg(cover);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::size_t polylines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1))
    ++polylines;
  CHECK(polylines == 2 * cover.bands.size());
}

TEST_CASE("cover SVG decimates dense grids") {
  AttractorCover cover = build_cover(fixtures::ref_exact(), 0, 1025);
  std::string svg = cover_svg(cover);
  std::size_t start = svg.find("points=\"");
  REQUIRE(start != std::string::npos);
  std::size_t end = svg.find('"', start + 8);
  std::string points = svg.substr(start + 8, end - start - 8);
  std::size_t nodes = 0;
  for (char ch : points)
    if (ch == ',') ++nodes;
  CHECK(nodes <= 258);
  CHECK(nodes >= 128);
}

TEST_CASE("atomic writes produce complete files and clean overwrites") {
  fs::path dir = fs::temp_directory_path() / "skewdim_io_test";
  fs::remove_all(dir);
  fs::path target = dir / "nested" / "report.txt";
  atomic_write_text(target, "first\n");
  CHECK(slurp(target) == "first\n");
  atomic_write_text(target, "second\n");
  CHECK(slurp(target) == "second\n");
  for (const auto& entry : fs::directory_iterator(target.parent_path()))
    CHECK(entry.path().extension() != ".tmp");
  fs::remove_all(dir);
}

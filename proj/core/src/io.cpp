#include "skewdim/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <utility>
#include <vector>

#include "json.hpp"

namespace skewdim {

namespace {

using nlohmann::json;

std::string chars_of(double v, int fixed_precision = -1) {
  char buf[64];
  std::to_chars_result r =
      fixed_precision < 0 ? std::to_chars(buf, buf + sizeof buf, v)
                          : std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed,
                                          fixed_precision);
  return std::string(buf, r.ptr);
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw json_parse_error(std::string("missing field: ") + key);
  return *it;
}

double number_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw json_parse_error(std::string("field is not a number: ") + key);
  return v.get<double>();
}

std::vector<std::pair<double, double>> sample_pairs(const json& arr, const char* key) {
  if (!arr.is_array() || arr.size() < 2)
    throw json_parse_error(std::string("field needs at least two [x, y] pairs: ") + key);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(arr.size());
  for (const json& row : arr) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
      throw json_parse_error(std::string("malformed [x, y] pair in ") + key);
    samples.emplace_back(row[0].get<double>(), row[1].get<double>());
  }
  return samples;
}

Branch branch_from_json(const json& j) {
  const json& kind = field(j, "kind");
  double lo = number_field(j, "lo");
  double hi = number_field(j, "hi");
  const json& images = field(j, "images");
  if (!images.is_array() || images.size() != 2 || !images[0].is_number() || !images[1].is_number())
    throw json_parse_error("branch images must be a pair of numbers");
  double img_lo = images[0].get<double>();
  double img_hi = images[1].get<double>();

  if (kind == "linear") return Branch::linear(lo, hi, img_lo, img_hi);
  if (kind == "tabulated") {
    auto samples = sample_pairs(field(j, "samples"), "samples");
    if (std::abs(samples.front().first - lo) > 1e-9 || std::abs(samples.back().first - hi) > 1e-9 ||
        std::abs(samples.front().second - img_lo) > 1e-9 ||
        std::abs(samples.back().second - img_hi) > 1e-9)
      throw json_parse_error("branch endpoints disagree with samples");
    return Branch::tabulated(std::move(samples));
  }
  throw json_parse_error("branch kind must be \"linear\" or \"tabulated\"");
}

json branch_to_json(const Branch& br) {
  json j;
  j["kind"] = br.kind() == Branch::Kind::linear ? "linear" : "tabulated";
  j["lo"] = br.lo();
  j["hi"] = br.hi();
  j["images"] = json::array({br.image_of_lo(), br.image_of_hi()});
  if (br.kind() == Branch::Kind::tabulated) {
    json rows = json::array();
    const MonotoneTable& t = *br.table();
    for (std::size_t i = 0; i < t.xs().size(); ++i)
      rows.push_back(json::array({t.xs()[i], t.ys()[i]}));
    j["samples"] = std::move(rows);
  }
  return j;
}

IntervalMap interval_map_from_obj(const json& j) {
  const json& branches = field(j, "branches");
  if (!branches.is_array() || branches.size() != 2)
    throw json_parse_error("branches must hold exactly two entries");
  return IntervalMap::create(number_field(j, "a"), number_field(j, "b"), number_field(j, "c"),
                             number_field(j, "d"), branch_from_json(branches[0]),
                             branch_from_json(branches[1]));
}

json interval_map_to_obj(const IntervalMap& map) {
  json j;
  j["a"] = map.a();
  j["b"] = map.b();
  j["c"] = map.c();
  j["d"] = map.d();
  j["branches"] = json::array({branch_to_json(map.branch(1)), branch_to_json(map.branch(2))});
  return j;
}

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw json_parse_error("malformed JSON document");
  return j;
}

std::vector<double> pair_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw json_parse_error(std::string("field must be a pair of numbers: ") + key);
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

std::string format_double(double v) { return chars_of(v); }

IntervalMap interval_map_from_json(const std::string& text) {
  return interval_map_from_obj(parse_or_throw(text));
}

std::string interval_map_to_json(const IntervalMap& map) {
  return interval_map_to_obj(map).dump(2) + "\n";
}

SkewSystem skew_system_from_json(const std::string& text) {
  json j = parse_or_throw(text);
  IntervalMap base = interval_map_from_obj(field(j, "base"));
  double lambda = number_field(j, "lambda");

  const json& fiber = field(j, "fiber");
  const json& kind = field(fiber, "kind");
  FiberProfile profile = [&]() {
    if (kind == "exact")
      return FiberProfile::exact(MonotoneTable::create(sample_pairs(field(fiber, "phi_samples"),
                                                                    "phi_samples")));
    if (kind == "upper") {
      auto q = pair_field(fiber, "q");
      return FiberProfile::upper_const(q[0], q[1]);
    }
    if (kind == "lower") {
      auto gamma = pair_field(fiber, "gamma");
      return FiberProfile::lower_const(gamma[0], gamma[1]);
    }
    throw json_parse_error("fiber kind must be \"exact\", \"upper\", or \"lower\"");
  }();
  return SkewSystem::create(std::move(base), std::move(profile), lambda);
}

std::string skew_system_to_json(const SkewSystem& sys) {
  json j;
  j["base"] = interval_map_to_obj(sys.base());
  j["lambda"] = sys.lambda();
  json fiber;
  switch (sys.fiber().kind()) {
    case FiberProfile::Kind::exact: {
      json rows = json::array();
      const MonotoneTable& t = sys.fiber().phi();
      for (std::size_t i = 0; i < t.xs().size(); ++i)
        rows.push_back(json::array({t.xs()[i], t.ys()[i]}));
      fiber["kind"] = "exact";
      fiber["phi_samples"] = std::move(rows);
      break;
    }
    case FiberProfile::Kind::upper_const:
      fiber["kind"] = "upper";
      fiber["q"] = json::array({sys.fiber().constant(1), sys.fiber().constant(2)});
      break;
    case FiberProfile::Kind::lower_const:
      fiber["kind"] = "lower";
      fiber["gamma"] = json::array({sys.fiber().constant(1), sys.fiber().constant(2)});
      break;
  }
  j["fiber"] = std::move(fiber);
  return j.dump(2) + "\n";
}

std::string cover_csv(const AttractorCover& cover) {
  std::string out = "word,x,y_lo,y_hi\r\n";
  for (const Band& band : cover.bands) {
    std::string word = band.word.str();
    for (std::size_t i = 0; i < band.y_lo.size(); ++i) {
      out += word;
      out += ',';
      out += chars_of(band.node_x(i));
      out += ',';
      out += chars_of(band.y_lo[i]);
      out += ',';
      out += chars_of(band.y_lo[i] + band.height);
      out += "\r\n";
    }
  }
  return out;
}

std::string interval_cover_csv(std::span<const AddressedInterval> cover) {
  std::string out = "word,lo,hi\r\n";
  for (const AddressedInterval& entry : cover) {
    out += entry.word.str();
    out += ',';
    out += chars_of(entry.interval.lo);
    out += ',';
    out += chars_of(entry.interval.hi);
    out += "\r\n";
  }
  return out;
}

std::string measure_csv(const EmpiricalMeasure& em) {
  std::string out = "x,y,word\r\n";
  for (std::size_t i = 0; i < em.points.size(); ++i) {
    out += chars_of(em.points[i].x);
    out += ',';
    out += chars_of(em.points[i].y);
    out += ',';
    if (i < em.words.size()) out += em.words[i].str();
    out += "\r\n";
  }
  return out;
}

std::string scales_csv(const DimensionFit& fit) {
  std::string out = "epsilon,count\r\n";
  for (std::size_t i = 0; i < fit.scales.size(); ++i) {
    out += chars_of(fit.scales[i]);
    out += ',';
    out += chars_of(fit.counts[i]);
    out += "\r\n";
  }
  return out;
}

std::string cover_svg(const AttractorCover& cover) {
  constexpr double margin = 40.0;
  constexpr double plot = 800.0;
  const double size = plot + 2.0 * margin;

  double a = 0.0, b = 1.0;
  if (!cover.bands.empty()) {
    a = cover.bands.front().x_lo;
    b = cover.bands.front().x_hi;
  }
  auto px = [&](double x) { return margin + (x - a) / (b - a) * plot; };
  auto py = [&](double y) { return margin + (1.0 - y) * plot; };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         chars_of(size, 0) + "\" height=\"" + chars_of(size, 0) + "\" viewBox=\"0 0 " +
         chars_of(size, 0) + " " + chars_of(size, 0) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + chars_of(size, 0) + "\" height=\"" +
         chars_of(size, 0) + "\" fill=\"#ffffff\"/>\n";
  out += "<rect x=\"" + chars_of(margin, 1) + "\" y=\"" + chars_of(margin, 1) + "\" width=\"" +
         chars_of(plot, 1) + "\" height=\"" + chars_of(plot, 1) +
         "\" fill=\"none\" stroke=\"#24292f\" stroke-width=\"1\"/>\n";

  for (const Band& band : cover.bands) {
    const std::size_t n = band.y_lo.size();
    const std::size_t stride = n > 257 ? (n - 2) / 256 + 1 : 1;
    auto polyline = [&](double offset, const char* color) {
      std::string points;
      for (std::size_t i = 0; i + 1 < n; i += stride) {
        points += chars_of(px(band.node_x(i)), 2);
        points += ',';
        points += chars_of(py(band.y_lo[i] + offset), 2);
        points += ' ';
      }
      points += chars_of(px(band.node_x(n - 1)), 2);
      points += ',';
      points += chars_of(py(band.y_lo[n - 1] + offset), 2);
      out += "<polyline fill=\"none\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"0.8\" points=\"" + points + "\"/>\n";
    };
    polyline(0.0, "#1f6feb");
    polyline(band.height, "#d29922");
  }
  out += "</svg>\n";
  return out;
}

void atomic_write_text(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace skewdim

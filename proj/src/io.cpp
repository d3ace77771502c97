#include "hadwiger/io.hpp"

#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hadwiger::io {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(name + ": " + e.what());
  }
}

template <typename T>
T field(const json& j, const std::string& key, const std::string& name) {
  if (!j.contains(key))
    throw ParseError(name + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(name + ": field '" + key + "': " + e.what());
  }
}

std::vector<std::vector<double>> parse_breakpoints(const json& j,
                                                   const std::string& name) {
  auto axes = field<std::vector<std::vector<double>>>(j, "breakpoints", name);
  if (axes.empty()) throw ParseError(name + ": breakpoints must be nonempty");
  return axes;
}

GridCell cell_from_flat_index(const GridComplex& cx, std::uint64_t flat) {
  GridCell c(static_cast<std::size_t>(cx.dim()));
  for (int ax = 0; ax < cx.dim(); ++ax) {
    const auto r = static_cast<std::uint64_t>(cx.parity_count(ax));
    c[static_cast<std::size_t>(ax)] = static_cast<int>(flat % r);
    flat /= r;
  }
  return c;
}

std::uint64_t flat_index_of_cell(const GridComplex& cx, const GridCell& c) {
  std::uint64_t flat = 0;
  for (int ax = cx.dim(); ax-- > 0;) {
    flat = flat * static_cast<std::uint64_t>(cx.parity_count(ax)) +
           static_cast<std::uint64_t>(c[static_cast<std::size_t>(ax)]);
  }
  return flat;
}

GridRegion parse_grid_region(const json& j, const std::string& name) {
  GridComplex cx(parse_breakpoints(j, name));
  auto cells = field<std::vector<std::vector<int>>>(j, "cells", name);
  std::set<GridCell> set;
  for (auto& c : cells) {
    if (!cx.valid_cell(c))
      throw ParseError(name + ": invalid cell identifier");
    set.insert(std::move(c));
  }
  return GridRegion(std::move(cx), std::move(set));
}

ConstructibleFunction parse_grid_function(const json& j,
                                          const std::string& name) {
  GridComplex cx(parse_breakpoints(j, name));
  auto values = field<std::vector<double>>(j, "values", name);
  if (values.size() != cx.total_cells())
    throw ParseError(name + ": values length " + std::to_string(values.size()) +
                     " != cell count " + std::to_string(cx.total_cells()));
  std::map<GridCell, double> map;
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    if (values[static_cast<std::size_t>(i)] != 0.0)
      map[cell_from_flat_index(cx, i)] = values[static_cast<std::size_t>(i)];
  }
  return ConstructibleFunction(std::move(cx), std::move(map));
}

SimplicialSet parse_simplicial_set(const json& j, const std::string& name) {
  const int n = field<int>(j, "dimension", name);
  auto verts = field<std::vector<std::vector<double>>>(j, "vertices", name);
  auto cells = field<std::vector<std::vector<int>>>(j, "cells", name);
  std::vector<Eigen::VectorXd> vv;
  vv.reserve(verts.size());
  for (const auto& v : verts) {
    if (static_cast<int>(v.size()) != n)
      throw ParseError(name + ": vertex length != dimension");
    vv.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(),
                                                   static_cast<long>(v.size())));
  }
  try {
    return SimplicialSet(n, std::move(vv), std::move(cells));
  } catch (const std::invalid_argument& e) {
    throw ParseError(name + ": " + e.what());
  }
}

}  // namespace

InputObject parse_input_text(const std::string& text, const std::string& name) {
  const json j = parse_json(text, name);
  const auto kind = field<std::string>(j, "kind", name);
  try {
    if (kind == "grid-region") return parse_grid_region(j, name);
    if (kind == "grid-function") return parse_grid_function(j, name);
    if (kind == "simplicial-set") return parse_simplicial_set(j, name);
    if (kind == "simplicial-function") {
      SimplicialSet set = parse_simplicial_set(j, name);
      auto vals = field<std::vector<double>>(j, "vertex_values", name);
      return PLFunction(std::move(set), std::move(vals));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(name + ": " + e.what());
  }
  throw ParseError(name + ": unknown kind '" + kind + "'");
}

InputObject parse_input(const std::string& path) {
  return parse_input_text(read_file(path), path);
}

std::string serialize_grid_function(const ConstructibleFunction& h) {
  nlohmann::ordered_json j;
  j["kind"] = "grid-function";
  j["breakpoints"] = h.complex().axes();
  std::vector<double> values(h.complex().total_cells(), 0.0);
  for (const auto& [cell, v] : h.values())
    values[static_cast<std::size_t>(flat_index_of_cell(h.complex(), cell))] = v;
  j["values"] = values;
  return j.dump(2) + "\n";
}

namespace {

struct PgmImage {
  int width = 0, height = 0, maxval = 0;
  std::vector<int> samples;  // row-major, top row first
};

PgmImage parse_pgm(const std::string& text, const std::string& name) {
  PgmImage img;
  std::size_t pos = 0;
  auto skip_space = [&](bool required) {
    std::size_t start = pos;
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    if (required && pos == start)
      throw ParseError(name + ": malformed header (missing separator)");
  };
  auto read_int = [&]() {
    skip_space(false);
    std::size_t start = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) throw ParseError(name + ": malformed header token");
    return std::stoi(text.substr(start, pos - start));
  };

  if (text.size() < 2 || text[0] != 'P' || (text[1] != '2' && text[1] != '5'))
    throw ParseError(name + ": not a PGM (P2/P5) file");
  const bool binary = text[1] == '5';
  pos = 2;
  img.width = read_int();
  img.height = read_int();
  img.maxval = read_int();
  if (img.width <= 0 || img.height <= 0)
    throw ParseError(name + ": non-positive image dimensions");
  if (img.maxval <= 0 || img.maxval > 65535)
    throw ParseError(name + ": maxval out of range (1..65535)");

  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.samples.reserve(count);
  if (binary) {
    if (pos >= text.size() ||
        !std::isspace(static_cast<unsigned char>(text[pos])))
      throw ParseError(name + ": malformed header");
    ++pos;  // single whitespace before the raster
    const int bytes = img.maxval > 255 ? 2 : 1;
    if (text.size() - pos < count * static_cast<std::size_t>(bytes))
      throw ParseError(name + ": truncated payload");
    for (std::size_t i = 0; i < count; ++i) {
      int v = static_cast<unsigned char>(text[pos++]);
      if (bytes == 2) v = v * 256 + static_cast<unsigned char>(text[pos++]);
      img.samples.push_back(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      skip_space(false);
      if (pos >= text.size()) throw ParseError(name + ": truncated payload");
      img.samples.push_back(read_int());
    }
  }
  for (int v : img.samples)
    if (v > img.maxval) throw ParseError(name + ": sample exceeds maxval");
  return img;
}

}  // namespace

ConstructibleFunction ingest_image(const std::string& path, Skeleton skeleton) {
  const PgmImage img = parse_pgm(read_file(path), path);
  const int w = img.width, ht = img.height;
  std::vector<std::vector<double>> axes(2);
  for (int i = 0; i <= w; ++i) axes[0].push_back(static_cast<double>(i));
  for (int j = 0; j <= ht; ++j) axes[1].push_back(static_cast<double>(j));
  GridComplex cx(axes);

  // Pixel (column i, row j) covers the open cell (i, i+1) x (j, j+1).
  auto pixel = [&](int i, int j) {
    return static_cast<double>(
               img.samples[static_cast<std::size_t>(j * w + i)]) /
           static_cast<double>(img.maxval);
  };

  const bool use_max = skeleton == Skeleton::kMax;
  std::map<GridCell, double> values;
  for (int pj = 0; pj < cx.parity_count(1); ++pj) {
    for (int pi = 0; pi < cx.parity_count(0); ++pi) {
      // Adjacent open 2-cells: column range from the x parity, row range
      // from the y parity.
      const int ci_lo = pi % 2 == 1 ? pi / 2 : pi / 2 - 1;
      const int ci_hi = pi % 2 == 1 ? pi / 2 : pi / 2;
      const int cj_lo = pj % 2 == 1 ? pj / 2 : pj / 2 - 1;
      const int cj_hi = pj % 2 == 1 ? pj / 2 : pj / 2;
      bool any = false;
      double acc = 0.0;
      for (int cj = std::max(0, cj_lo); cj <= std::min(ht - 1, cj_hi); ++cj) {
        for (int ci = std::max(0, ci_lo); ci <= std::min(w - 1, ci_hi); ++ci) {
          const double v = pixel(ci, cj);
          acc = any ? (use_max ? std::max(acc, v) : std::min(acc, v)) : v;
          any = true;
        }
      }
      if (any && acc != 0.0) values[{pi, pj}] = acc;
    }
  }
  return ConstructibleFunction(std::move(cx), std::move(values));
}

namespace {

CoefficientProfile profile_from_json(const json& j, const std::string& name) {
  auto points = field<std::vector<std::vector<double>>>(j, "points", name);
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    if (p.size() != 2) throw ParseError(name + ": profile point needs [x, y]");
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }
  try {
    return CoefficientProfile(std::move(xs), std::move(ys));
  } catch (const std::invalid_argument& e) {
    throw ParseError(name + ": " + e.what());
  }
}

}  // namespace

HadwigerValuation parse_valuation(const std::string& path, Bound bound) {
  const json j = parse_json(read_file(path), path);
  if (!j.contains("profiles") || !j.at("profiles").is_array())
    throw ParseError(path + ": missing 'profiles' array");
  HadwigerValuation v;
  v.bound = bound;
  if (j.contains("bound")) {
    const auto b = field<std::string>(j, "bound", path);
    if (b == "lower")
      v.bound = Bound::kLower;
    else if (b == "upper")
      v.bound = Bound::kUpper;
    else
      throw ParseError(path + ": bound must be 'lower' or 'upper'");
  }
  for (const auto& pj : j.at("profiles"))
    v.profiles.push_back(profile_from_json(pj, path));
  return v;
}

CoefficientProfile parse_profile(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  return profile_from_json(j, path);
}

RigidMotion parse_motion(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  auto rot = field<std::vector<std::vector<double>>>(j, "rotation", path);
  auto tr = field<std::vector<double>>(j, "translation", path);
  const int n = static_cast<int>(rot.size());
  RigidMotion m;
  m.rotation.resize(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rot[static_cast<std::size_t>(i)].size()) != n)
      throw ParseError(path + ": rotation must be square");
    for (int jj = 0; jj < n; ++jj)
      m.rotation(i, jj) = rot[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
  }
  m.translation =
      Eigen::Map<const Eigen::VectorXd>(tr.data(), static_cast<long>(tr.size()));
  return m;
}

CroftonConstants load_calibration(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  CroftonConstants c;
  if (!j.contains("constants") || !j.at("constants").is_array())
    throw ParseError(path + ": missing 'constants' array");
  for (const auto& e : j.at("constants")) {
    CalibrationEntry entry;
    const int n = field<int>(e, "n", path);
    const int k = field<int>(e, "k", path);
    entry.value = field<double>(e, "value", path);
    entry.std_error = field<double>(e, "std_error", path);
    entry.samples = field<long long>(e, "samples", path);
    entry.seed = field<std::uint64_t>(e, "seed", path);
    try {
      c.set(n, k, entry);
    } catch (const std::invalid_argument& err) {
      throw ParseError(path + ": " + err.what());
    }
  }
  return c;
}

void save_calibration(const CroftonConstants& c, const std::string& path) {
  nlohmann::ordered_json j;
  j["constants"] = nlohmann::ordered_json::array();
  for (const auto& [nk, e] : c.table()) {
    nlohmann::ordered_json entry;
    entry["n"] = nk.first;
    entry["k"] = nk.second;
    entry["value"] = e.value;
    entry["std_error"] = e.std_error;
    entry["samples"] = e.samples;
    entry["seed"] = e.seed;
    j["constants"].push_back(entry);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write calibration file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace hadwiger::io

#include "scc/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace scc {

using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

std::uint32_t to_little(std::uint32_t v)
{
  if constexpr (std::endian::native == std::endian::big) {
    v = ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  }
  return v;
}

json vec3(Eigen::Vector3d const &v)
{
  return json::array({v.x(), v.y(), v.z()});
}

Eigen::Vector3d vec3(json const &j, char const *key)
{
  auto const &a = j.at(key);
  if (!a.is_array() || a.size() != 3) {
    throw FormatError(std::string("expected a 3-vector for '") + key + "'");
  }
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

char const *domain_name(Domain d)
{
  return d == Domain::Image ? "image" : "kspace";
}

Domain parse_domain(std::string const &s)
{
  if (s == "image") {
    return Domain::Image;
  }
  if (s == "kspace") {
    return Domain::KSpace;
  }
  throw FormatError("unknown domain_tag '" + s + "'");
}

template <typename Scalar>
void write_impl(Volume<Scalar> const &v, fs::path const &path, WriteOptions const &opts)
{
  constexpr bool is_complex = std::is_same_v<Scalar, Complex>;
  if (v.data().size() != v.shape().size()) {
    throw ShapeError("write_volume: data length does not match shape " + to_string(v.shape()));
  }
  if (!opts.allow_nan && !v.data().isFinite().all()) {
    throw DomainError("write_volume: non-finite samples in " + path.string() + " (allow with --allow-nan)");
  }
  Shape const &s = v.shape();
  fs::path const payload = payload_path(path);

  json header;
  header["magic"] = kVolumeMagic;
  header["shape"] = json::array({s.ncoil, s.nz, s.ny, s.nx});
  header["dtype"] = is_complex ? "c64" : "f32";
  header["byte_order"] = "little-endian";
  header["layout"] = "x-fastest";
  header["voxel_size_mm"] = vec3(v.geometry().voxel_size_mm);
  header["origin_mm"] = vec3(v.geometry().origin_mm);
  header["domain_tag"] = domain_name(v.domain());
  header["payload"] = payload.filename().string();
  header["meta"] = opts.meta;

  std::vector<std::uint32_t> words;
  words.reserve(static_cast<std::size_t>(v.data().size()) * (is_complex ? 2 : 1));
  auto push = [&words](double value) {
    words.push_back(to_little(std::bit_cast<std::uint32_t>(static_cast<float>(value))));
  };
  for (Index i = 0; i < v.data().size(); ++i) {
    if constexpr (is_complex) {
      push(v.data()[i].real());
      push(v.data()[i].imag());
    } else {
      push(v.data()[i]);
    }
  }

  {
    std::ofstream out(payload, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + payload.string() + " for writing");
    }
    out.write(reinterpret_cast<char const *>(words.data()),
              static_cast<std::streamsize>(words.size() * sizeof(std::uint32_t)));
    if (!out) {
      throw IoError("failed writing " + payload.string());
    }
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << header.dump(2) << '\n';
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

struct RawVolume
{
  json header;
  Shape shape;
  bool complex = false;
  Geometry geometry;
  Domain domain = Domain::Image;
  std::vector<float> values;
};

RawVolume read_raw(fs::path const &path)
{
  RawVolume raw;
  raw.header = read_header(path);
  json const &h = raw.header;
  try {
    if (h.at("magic").get<std::string>() != kVolumeMagic) {
      throw FormatError("magic mismatch in " + path.string());
    }
    auto const &shape = h.at("shape");
    if (!shape.is_array() || shape.size() != 4) {
      throw FormatError("shape must list [coil, z, y, x]");
    }
    raw.shape = Shape{shape[3].get<Index>(), shape[2].get<Index>(), shape[1].get<Index>(), shape[0].get<Index>()};
    if (raw.shape.nx < 1 || raw.shape.ny < 1 || raw.shape.nz < 1 || raw.shape.ncoil < 1) {
      throw FormatError("shape extents must be positive");
    }
    std::string const dtype = h.at("dtype").get<std::string>();
    if (dtype != "c64" && dtype != "f32") {
      throw FormatError("unsupported dtype '" + dtype + "'");
    }
    raw.complex = dtype == "c64";
    if (h.at("byte_order").get<std::string>() != "little-endian") {
      throw FormatError("unsupported byte order");
    }
    if (h.at("layout").get<std::string>() != "x-fastest") {
      throw FormatError("unsupported layout");
    }
    raw.geometry.voxel_size_mm = vec3(h, "voxel_size_mm");
    raw.geometry.origin_mm = vec3(h, "origin_mm");
    raw.domain = parse_domain(h.at("domain_tag").get<std::string>());
  } catch (json::exception const &e) {
    throw FormatError("bad header " + path.string() + ": " + e.what());
  }

  fs::path payload = path.parent_path() / h.value("payload", payload_path(path).filename().string());
  std::ifstream in(payload, std::ios::binary);
  if (!in) {
    throw IoError("cannot open payload " + payload.string());
  }
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t const expected =
      static_cast<std::size_t>(raw.shape.size()) * (raw.complex ? 2 : 1) * sizeof(std::uint32_t);
  if (bytes.size() < expected) {
    throw FormatError("truncated payload: " + payload.string() + " holds " + std::to_string(bytes.size()) +
                      " bytes, header requires " + std::to_string(expected));
  }
  if (bytes.size() > expected) {
    throw FormatError("payload size mismatch: " + payload.string() + " holds " + std::to_string(bytes.size()) +
                      " bytes, header requires " + std::to_string(expected));
  }
  raw.values.resize(expected / sizeof(std::uint32_t));
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    std::uint32_t w;
    std::memcpy(&w, bytes.data() + i * sizeof(w), sizeof(w));
    raw.values[i] = std::bit_cast<float>(to_little(w));
  }
  return raw;
}

json coil_json(CoilGeometry const &c)
{
  return {{"center_mm", vec3(c.center_mm)}, {"axis", vec3(c.axis)}, {"radius_mm", c.radius_mm},
          {"segments", c.segments}};
}

std::vector<CoilGeometry> coils_from_json(json const &j)
{
  std::vector<CoilGeometry> coils;
  for (auto const &c : j) {
    CoilGeometry coil;
    coil.center_mm = vec3(c, "center_mm");
    coil.axis = vec3(c, "axis").normalized();
    coil.radius_mm = c.at("radius_mm").get<double>();
    coil.segments = c.value("segments", 256);
    coil.validate();
    coils.push_back(coil);
  }
  return coils;
}

} // namespace

fs::path payload_path(fs::path const &header)
{
  fs::path p = header;
  if (p.extension() == ".json") {
    return p.replace_extension(".raw");
  }
  p += ".raw";
  return p;
}

void write_volume(ComplexVolume const &v, fs::path const &path, WriteOptions const &opts)
{
  write_impl(v, path, opts);
}

void write_volume(RealVolume const &v, fs::path const &path, WriteOptions const &opts)
{
  write_impl(v, path, opts);
}

json read_header(fs::path const &path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (json::exception const &e) {
    throw FormatError("header " + path.string() + " is not valid JSON: " + e.what());
  }
}

ComplexVolume read_volume(fs::path const &path)
{
  RawVolume raw = read_raw(path);
  ComplexVolume v(raw.shape, raw.domain, raw.geometry);
  for (Index i = 0; i < raw.shape.size(); ++i) {
    v[i] = raw.complex ? Complex(raw.values[2 * i], raw.values[2 * i + 1]) : Complex(raw.values[i], 0.0);
  }
  return v;
}

RealVolume read_real_volume(fs::path const &path)
{
  RawVolume raw = read_raw(path);
  RealVolume v(raw.shape, raw.domain, raw.geometry);
  for (Index i = 0; i < raw.shape.size(); ++i) {
    if (raw.complex) {
      if (raw.values[2 * i + 1] != 0.0f) {
        throw FormatError(path.string() + " holds complex data where a real volume is required");
      }
      v[i] = raw.values[2 * i];
    } else {
      v[i] = raw.values[i];
    }
  }
  return v;
}

void write_mask(SamplingMask const &mask, fs::path const &path)
{
  RealVolume v(mask.grid(), mask.keep().cast<double>(), Domain::KSpace);
  write_volume(v, path, {false, {{"content", "sampling_mask"}}});
}

SamplingMask read_mask(fs::path const &path)
{
  RealVolume const v = read_real_volume(path);
  if (v.coils() != 1) {
    throw FormatError("sampling mask must have one channel");
  }
  return SamplingMask(v.shape(), v.data() > 0.5);
}

void write_sensitivities(SensitivitySet const &set, fs::path const &path, WriteOptions const &opts)
{
  WriteOptions o = opts;
  o.meta["content"] = "sensitivities";
  o.meta["kind"] = set.kind == SensitivityKind::SsosEstimate ? "ssos_estimate" : "true_map";
  write_volume(set.maps, path, o);
}

SensitivitySet read_sensitivities(fs::path const &path)
{
  json const meta = read_header(path).value("meta", json::object());
  SensitivitySet set;
  set.maps = read_volume(path);
  set.kind = meta.value("kind", std::string("ssos_estimate")) == "true_map" ? SensitivityKind::TrueMap
                                                                         : SensitivityKind::SsosEstimate;
  set.support = BoolArray::Constant(set.maps.shape().voxels(), false);
  for (Index k = 0; k < set.maps.coils(); ++k) {
    set.support = set.support || (set.maps.coil(k).abs2() > 0.0);
  }
  return set;
}

void write_correction_map(CorrectionMap const &map, fs::path const &path, WriteOptions const &opts)
{
  WriteOptions o = opts;
  o.meta["content"] = "correction_map";
  o.meta["map_kind"] = to_string(map.kind);
  write_volume(map.values, path, o);
}

CorrectionMap read_correction_map(fs::path const &path)
{
  json const meta = read_header(path).value("meta", json::object());
  CorrectionMap map;
  map.values = read_real_volume(path);
  map.kind = parse_map_kind(meta.value("map_kind", std::string("g")));
  return map;
}

json plane_to_json(PlaneSpec const &p)
{
  return {{"origin_mm", vec3(p.origin_mm)},
          {"row_dir", vec3(p.row_dir)},
          {"col_dir", vec3(p.col_dir)},
          {"row_spacing_mm", p.row_spacing_mm},
          {"col_spacing_mm", p.col_spacing_mm},
          {"rows", p.rows},
          {"cols", p.cols}};
}

PlaneSpec plane_from_json(json const &j)
{
  PlaneSpec p;
  try {
    p.origin_mm = vec3(j, "origin_mm");
    p.row_dir = vec3(j, "row_dir");
    p.col_dir = vec3(j, "col_dir");
    p.row_spacing_mm = j.at("row_spacing_mm").get<double>();
    p.col_spacing_mm = j.at("col_spacing_mm").get<double>();
    p.rows = j.at("rows").get<Index>();
    p.cols = j.at("cols").get<Index>();
  } catch (json::exception const &e) {
    throw FormatError(std::string("bad plane description: ") + e.what());
  }
  p.validate();
  return p;
}

PlaneSpec read_plane(fs::path const &path)
{
  return plane_from_json(read_header(path));
}

Scenario scenario_from_json(json const &j)
{
  Scenario s;
  try {
    if (j.contains("phantom")) {
      auto const &p = j.at("phantom");
      Index const n = p.contains("matrix") ? p.at("matrix")[0].get<Index>() : 256;
      double const fov = p.contains("fov_mm") ? p.at("fov_mm")[0].get<double>() : 256.0;
      s.phantom = default_phantom(n, fov);
      if (p.contains("matrix")) {
        s.phantom.nx = p.at("matrix")[0].get<Index>();
        s.phantom.ny = p.at("matrix")[1].get<Index>();
      }
      if (p.contains("fov_mm")) {
        s.phantom.fov_mm = {p.at("fov_mm")[0].get<double>(), p.at("fov_mm")[1].get<double>()};
      }
      if (p.contains("shapes")) {
        s.phantom.shapes.clear();
        for (auto const &sh : p.at("shapes")) {
          PhantomShape shape;
          std::string const type = sh.value("type", std::string("ellipse"));
          if (type == "ellipse") {
            shape.kind = PhantomShape::Kind::Ellipse;
          } else if (type == "rectangle") {
            shape.kind = PhantomShape::Kind::Rectangle;
          } else {
            throw FormatError("unknown phantom shape '" + type + "'");
          }
          shape.center_mm = {sh.at("center_mm")[0].get<double>(), sh.at("center_mm")[1].get<double>()};
          shape.half_extent_mm = {sh.at("half_extent_mm")[0].get<double>(),
                                  sh.at("half_extent_mm")[1].get<double>()};
          shape.angle_deg = sh.value("angle_deg", 0.0);
          shape.intensity = sh.at("intensity").get<double>();
          s.phantom.shapes.push_back(shape);
        }
      }
    }
    s.phantom.validate();
    double const fov = s.phantom.fov_mm.x();
    s.surface_coils = j.contains("surface_coils") ? coils_from_json(j.at("surface_coils"))
                                                  : default_surface_coils(fov);
    s.body_coils = j.contains("body_coils") ? coils_from_json(j.at("body_coils")) : default_body_coils(fov);
    if (j.contains("mask")) {
      auto const &m = j.at("mask");
      std::string const type = m.value("type", std::string("full"));
      if (type == "full") {
        s.mask.kind = MaskSpec::Kind::Full;
      } else if (type == "uniform") {
        s.mask.kind = MaskSpec::Kind::Uniform;
        s.mask.rate = m.value("rate", Index{2});
        s.mask.axis = m.value("axis", 1);
      } else {
        throw FormatError("unknown mask type '" + type + "'");
      }
    }
    s.prescan_matrix = j.value("prescan_matrix", Index{32});
    s.sigma = j.value("sigma", 0.0);
    s.seed = j.value("seed", std::uint64_t{0});
  } catch (json::exception const &e) {
    throw FormatError(std::string("bad scenario: ") + e.what());
  }
  if (!(s.sigma >= 0.0)) {
    throw ConfigError("scenario: sigma must be >= 0");
  }
  return s;
}

Scenario read_scenario(fs::path const &path)
{
  return scenario_from_json(read_header(path));
}

json scenario_to_json(Scenario const &s)
{
  json shapes = json::array();
  for (auto const &sh : s.phantom.shapes) {
    shapes.push_back({{"type", sh.kind == PhantomShape::Kind::Ellipse ? "ellipse" : "rectangle"},
                      {"center_mm", {sh.center_mm.x(), sh.center_mm.y()}},
                      {"half_extent_mm", {sh.half_extent_mm.x(), sh.half_extent_mm.y()}},
                      {"angle_deg", sh.angle_deg},
                      {"intensity", sh.intensity}});
  }
  json surface = json::array();
  for (auto const &c : s.surface_coils) {
    surface.push_back(coil_json(c));
  }
  json body = json::array();
  for (auto const &c : s.body_coils) {
    body.push_back(coil_json(c));
  }
  json mask = {{"type", s.mask.kind == MaskSpec::Kind::Full ? "full" : "uniform"}};
  if (s.mask.kind == MaskSpec::Kind::Uniform) {
    mask["rate"] = s.mask.rate;
    mask["axis"] = s.mask.axis;
  }
  return {{"phantom",
           {{"matrix", {s.phantom.nx, s.phantom.ny}},
            {"fov_mm", {s.phantom.fov_mm.x(), s.phantom.fov_mm.y()}},
            {"shapes", shapes}}},
          {"surface_coils", surface},
          {"body_coils", body},
          {"mask", mask},
          {"prescan_matrix", s.prescan_matrix},
          {"sigma", s.sigma},
          {"seed", s.seed}};
}

} // namespace scc

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "scc/simulate.hpp"
#include "scc/types.hpp"

namespace scc {

namespace fs = std::filesystem;

/// Two-file container: a JSON header at `path` and a raw little-endian
/// payload next to it (header path with its extension replaced by ".raw").
///
/// Header fields:
///   magic          "SCCVOL1"
///   shape          [coil, z, y, x]
///   dtype          "c64" (interleaved re/im float32) or "f32"
///   byte_order     "little-endian"
///   layout         "x-fastest"
///   voxel_size_mm  [x, y, z]
///   origin_mm      [x, y, z], world position of the volume center
///   domain_tag     "image" or "kspace"
///   payload        payload file name, relative to the header
///   meta           free-form object
inline constexpr char const *kVolumeMagic = "SCCVOL1";

struct WriteOptions
{
  bool allow_nan = false;
  nlohmann::json meta = nlohmann::json::object();
};

fs::path payload_path(fs::path const &header);

void write_volume(ComplexVolume const &v, fs::path const &path, WriteOptions const &opts = {});
void write_volume(RealVolume const &v, fs::path const &path, WriteOptions const &opts = {});

/// Reads either dtype; f32 payloads become complex with zero imaginary part.
ComplexVolume read_volume(fs::path const &path);
/// Reads an f32 volume (or a c64 one whose imaginary parts are all zero).
RealVolume read_real_volume(fs::path const &path);
nlohmann::json read_header(fs::path const &path);

void write_mask(SamplingMask const &mask, fs::path const &path);
SamplingMask read_mask(fs::path const &path);

void write_sensitivities(SensitivitySet const &set, fs::path const &path, WriteOptions const &opts = {});
/// Support is recovered as the voxels where any coil is nonzero.
SensitivitySet read_sensitivities(fs::path const &path);

void write_correction_map(CorrectionMap const &map, fs::path const &path, WriteOptions const &opts = {});
CorrectionMap read_correction_map(fs::path const &path);

nlohmann::json plane_to_json(PlaneSpec const &plane);
PlaneSpec plane_from_json(nlohmann::json const &j);
PlaneSpec read_plane(fs::path const &path);

/// Scenario file: every key is optional and falls back to the defaults.
///   phantom:        {matrix: [nx, ny], fov_mm: [fx, fy], shapes: [...]}
///                   shape: {type: "ellipse"|"rectangle", center_mm: [x, y],
///                           half_extent_mm: [a, b], angle_deg, intensity}
///   surface_coils:  [{center_mm: [x,y,z], axis: [x,y,z], radius_mm, segments}]
///   body_coils:     same as surface_coils
///   mask:           {type: "full"|"uniform", rate, axis}
///   prescan_matrix: n (central n x n k-space block)
///   sigma, seed
Scenario scenario_from_json(nlohmann::json const &j);
Scenario read_scenario(fs::path const &path);
/// Fully resolved scenario, readable by scenario_from_json.
nlohmann::json scenario_to_json(Scenario const &s);

} // namespace scc

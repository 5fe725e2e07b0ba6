#include "scc/cli.hpp"

#include <cstdio>
#include <fstream>
#include <filesystem>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "scc/correction.hpp"
#include "scc/interpolate.hpp"
#include "scc/io.hpp"
#include "scc/metrics.hpp"
#include "scc/png.hpp"
#include "scc/prescan.hpp"
#include "scc/recon.hpp"
#include "scc/simulate.hpp"

namespace scc::cli {

namespace {

struct Options
{
  // simulate
  std::string scenario;
  std::string out_dir;
  std::optional<double> sigma;
  std::optional<std::uint64_t> seed;
  // condition-prescan
  std::string body;
  std::string surface;
  std::string kind = "g";
  double alpha = 0.5;
  std::vector<Index> pad;
  std::string out_bc;
  std::string out_sc;
  // estimate-map
  std::string bc;
  std::string sc;
  double lambda = 5e-2;
  int max_iters = 0;
  double tol = 1e-6;
  // interp-plane
  std::string map;
  std::string plane;
  // recon / apply-h
  std::string data;
  std::string maps;
  std::string mask;
  std::string gmap;
  std::string hmap;
  std::string image;
  double recon_sigma = 1.0;
  double image_lambda = 0.0;
  // nmse
  std::string reference;
  std::string estimate;
  // render
  std::string input;
  std::string scale = "fixed01";
  std::optional<Index> slice;

  std::string output;
  bool allow_nan = false;

  WriteOptions write() const { return WriteOptions{allow_nan, nlohmann::json::object()}; }
};

int run_simulate(Options const &o, std::ostream &out)
{
  Scenario scenario = read_scenario(o.scenario);
  if (o.sigma) {
    if (!(*o.sigma >= 0.0)) {
      throw ConfigError("--sigma must be >= 0");
    }
    scenario.sigma = *o.sigma;
  }
  if (o.seed) {
    scenario.seed = *o.seed;
  }
  Acquisition const acq = simulate(scenario);
  fs::path const dir = o.out_dir;
  fs::create_directories(dir);
  auto const w = o.write();
  write_volume(acq.kspace, dir / "kspace.json", w);
  write_mask(acq.mask, dir / "mask.json");
  write_volume(acq.prescan.body, dir / "prescan_body.json", w);
  write_volume(acq.prescan.surface, dir / "prescan_surface.json", w);
  write_volume(acq.truth.image, dir / "x_true.json", w);
  write_sensitivities(acq.truth.surface_maps, dir / "maps_true.json", w);
  write_sensitivities(acq.truth.body_maps, dir / "body_maps_true.json", w);
  write_volume(acq.truth.g_true, dir / "g_true.json", w);
  write_sensitivities(acq.ssos_maps, dir / "maps_ssos.json", w);
  std::ofstream(dir / "scenario.json") << scenario_to_json(scenario).dump(2) << '\n';
  out << "wrote " << dir.string() << '\n';
  return kOk;
}

int run_condition(Options const &o, std::ostream &)
{
  PrescanPair pair{read_volume(o.body), read_volume(o.surface)};
  PrescanConfig cfg;
  cfg.tukey_alpha = o.alpha;
  cfg.normalize = parse_map_kind(o.kind) == MapKind::GMap ? Normalization::ByBodyMax : Normalization::BySurfaceMax;
  if (!o.pad.empty()) {
    if (o.pad.size() != 3) {
      throw ConfigError("--pad expects x,y,z");
    }
    cfg.pad_to = std::array<Index, 3>{o.pad[0], o.pad[1], o.pad[2]};
  }
  ConditionedPrescan const c = condition_prescan(pair, cfg);
  write_volume(c.body, o.out_bc, o.write());
  write_volume(c.surface, o.out_sc, o.write());
  return kOk;
}

int run_estimate(Options const &o, std::ostream &out)
{
  SccConfig cfg;
  cfg.lambda = o.lambda;
  if (o.max_iters > 0) {
    cfg.cg.max_iters = o.max_iters;
  }
  cfg.cg.rel_tol = o.tol;
  cfg.validate();
  MapKind const kind = parse_map_kind(o.kind);
  RealVolume const x_bc = read_real_volume(o.bc);
  RealVolume const x_sc = read_real_volume(o.sc);
  MapFit const fit = kind == MapKind::GMap ? fit_correction(x_bc, x_sc, cfg, kind)
                                           : fit_correction(x_sc, x_bc, cfg, kind);
  write_correction_map(fit.map, o.output, o.write());
  out << "cg_iterations=" << fit.iterations << " relative_residual=" << fit.final_residual << '\n';
  return kOk;
}

int run_interp(Options const &o, std::ostream &)
{
  CorrectionMap const map = read_correction_map(o.map);
  PlaneSpec const plane = read_plane(o.plane);
  write_correction_map(interpolate_to_plane(map, plane), o.output, o.write());
  return kOk;
}

int run_recon(Options const &o, std::ostream &out)
{
  ReconConfig cfg;
  cfg.noise_sigma = o.recon_sigma;
  cfg.image_reg_lambda = o.image_lambda;
  if (o.max_iters > 0) {
    cfg.cg.max_iters = o.max_iters;
  }
  cfg.cg.rel_tol = o.tol;
  cfg.validate();
  ComplexVolume const y = read_volume(o.data);
  SensitivitySet const maps = read_sensitivities(o.maps);
  SamplingMask const mask = read_mask(o.mask);
  SensitivitySet used = maps;
  if (!o.gmap.empty()) {
    CorrectionMap const g = read_correction_map(o.gmap);
    g.validate();
    used.maps = elementwise_scale(maps.maps, g);
  }
  ReconResult const r = reconstruct_detailed(y, used, mask, cfg);
  write_volume(r.image, o.output, o.write());
  out << "cg_iterations=" << r.iterations << " relative_residual=" << r.final_residual << '\n';
  return kOk;
}

int run_apply_h(Options const &o, std::ostream &)
{
  ComplexVolume const x = read_volume(o.image);
  CorrectionMap const h = read_correction_map(o.hmap);
  write_volume(apply_image_correction(x, h), o.output, o.write());
  return kOk;
}

int run_nmse(Options const &o, std::ostream &out)
{
  ComplexVolume const ref = read_volume(o.reference);
  ComplexVolume const est = read_volume(o.estimate);
  char buf[64];
  std::snprintf(buf, sizeof buf, "NMSE_dB=%.6f", nmse(ref, est));
  out << buf << '\n';
  return kOk;
}

int run_render(Options const &o, std::ostream &)
{
  render_png(read_volume(o.input), o.output, parse_png_scale(o.scale), o.slice);
  return kOk;
}

} // namespace

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  Options o;
  CLI::App app{"Surface-coil intensity correction for multicoil MRI"};
  app.name("scc");
  app.require_subcommand(1);
  std::function<int(Options const &, std::ostream &)> action;

  auto sim = app.add_subcommand("simulate", "Simulate the digital phantom acquisition");
  sim->add_option("scenario", o.scenario, "Scenario JSON file")->required();
  sim->add_option("--out,-o", o.out_dir, "Output directory")->required();
  sim->add_option("--sigma", o.sigma, "Noise standard deviation per component");
  sim->add_option("--seed", o.seed, "Noise seed");
  sim->add_flag("--allow-nan", o.allow_nan);
  sim->callback([&] { action = run_simulate; });

  auto cond = app.add_subcommand("condition-prescan", "Apodize, zero-pad, combine and normalize prescan stacks");
  cond->add_option("--body", o.body, "Body-coil stack")->required();
  cond->add_option("--surface", o.surface, "Surface-coil stack")->required();
  cond->add_option("--kind", o.kind, "g (normalize by body max) or h (by surface max)");
  cond->add_option("--alpha", o.alpha, "Tukey window parameter");
  cond->add_option("--pad", o.pad, "Zero-pad target x,y,z")->delimiter(',');
  cond->add_option("--out-bc", o.out_bc, "Combined body-coil volume")->required();
  cond->add_option("--out-sc", o.out_sc, "Combined surface-coil volume")->required();
  cond->add_flag("--allow-nan", o.allow_nan);
  cond->callback([&] { action = run_condition; });

  auto est = app.add_subcommand("estimate-map", "Estimate a g or h correction map");
  est->add_option("--kind", o.kind, "g or h")->required();
  est->add_option("--bc", o.bc, "Combined body-coil volume")->required();
  est->add_option("--sc", o.sc, "Combined surface-coil volume")->required();
  est->add_option("--lambda", o.lambda, "Smoothness weight");
  est->add_option("--max-iters", o.max_iters, "CG iteration cap");
  est->add_option("--tol", o.tol, "CG relative tolerance");
  est->add_option("--out,-o", o.output, "Output map")->required();
  est->add_flag("--allow-nan", o.allow_nan);
  est->callback([&] { action = run_estimate; });

  auto interp = app.add_subcommand("interp-plane", "Resample a 3D map on an imaging plane");
  interp->add_option("--map", o.map, "3D correction map")->required();
  interp->add_option("--plane", o.plane, "Plane JSON")->required();
  interp->add_option("--out,-o", o.output, "Output 2D map")->required();
  interp->add_flag("--allow-nan", o.allow_nan);
  interp->callback([&] { action = run_interp; });

  auto rec = app.add_subcommand("recon", "SENSE reconstruction, optionally with a g map");
  rec->add_option("--data", o.data, "Stacked k-space")->required();
  rec->add_option("--maps", o.maps, "Sensitivity maps")->required();
  rec->add_option("--mask", o.mask, "Sampling mask")->required();
  rec->add_option("--gmap", o.gmap, "Correction map applied to the sensitivities");
  rec->add_option("--sigma", o.recon_sigma, "Noise standard deviation weighting the data term");
  rec->add_option("--image-lambda", o.image_lambda, "Tikhonov weight");
  rec->add_option("--max-iters", o.max_iters, "CG iteration cap");
  rec->add_option("--tol", o.tol, "CG relative tolerance");
  rec->add_option("--out,-o", o.output, "Output image")->required();
  rec->add_flag("--allow-nan", o.allow_nan);
  rec->callback([&] { action = run_recon; });

  auto aph = app.add_subcommand("apply-h", "Multiply a reconstruction by an h map");
  aph->add_option("--image", o.image, "Reconstructed image")->required();
  aph->add_option("--hmap", o.hmap, "Correction map")->required();
  aph->add_option("--out,-o", o.output, "Output image")->required();
  aph->add_flag("--allow-nan", o.allow_nan);
  aph->callback([&] { action = run_apply_h; });

  auto nm = app.add_subcommand("nmse", "Print NMSE in dB");
  nm->add_option("reference", o.reference)->required();
  nm->add_option("estimate", o.estimate)->required();
  nm->callback([&] { action = run_nmse; });

  auto ren = app.add_subcommand("render", "Write a grayscale PNG");
  ren->add_option("input", o.input)->required();
  ren->add_option("--out,-o", o.output, "PNG file")->required();
  ren->add_option("--scale", o.scale, "fixed01 or max");
  ren->add_option("--slice", o.slice, "Slice index for 3D input");
  ren->callback([&] { action = run_render; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::ParseError const &e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action(o, out);
  } catch (ConfigError const &e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (IoError const &e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (FormatError const &e) {
    err << "error: " << e.what() << '\n';
    return kFormat;
  } catch (ShapeError const &e) {
    err << "error: " << e.what() << '\n';
    return kShape;
  } catch (DomainError const &e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (DivergenceError const &e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (std::exception const &e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

} // namespace scc::cli

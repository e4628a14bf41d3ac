// Copyright 2026 The arbf-scaffold Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arbf/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <numbers>
#include <optional>

#include "arbf/centers.hpp"
#include "arbf/errors.hpp"
#include "arbf/grid.hpp"
#include "arbf/isosurface.hpp"
#include "arbf/mesh.hpp"
#include "arbf/perturb.hpp"
#include "arbf/rbf.hpp"
#include "arbf/tpms.hpp"

namespace arbf::cli {
namespace {

namespace fs = std::filesystem;

struct MeshArgs {
  std::string path;
  std::string format;  // off | nodeele | hex; empty = from extension

  MeshFormat resolved_format() const {
    if (format.empty()) return format_from_path(path);
    if (format == "off") return MeshFormat::Off;
    if (format == "nodeele" || format == "node") return MeshFormat::NodeEle;
    if (format == "hex" || format == "hexascii") return MeshFormat::HexAscii;
    throw ValidationError("unknown mesh format '" + format + "' (expected off, nodeele or hex)");
  }
};

struct FitArgs {
  std::string mode = "aniso";
  std::string basis = "imq";
  double c = 0.1;
  double lambda = 0.0;
};

struct SampleArgs {
  std::size_t resolution = 64;
  double pad = 0.05;
  int workers = -1;  // -1: take ARBF_WORKERS

  int resolved_workers() const { return workers >= 0 ? workers : workers_from_env(); }
};

void add_mesh_options(CLI::App& cmd, MeshArgs& mesh) {
  cmd.add_option("--mesh", mesh.path, "Input mesh (.off, .node/.ele, .hexmesh)")->required();
  cmd.add_option("--format", mesh.format, "Mesh format override: off, nodeele, hex");
}

void add_fit_options(CLI::App& cmd, FitArgs& fit) {
  cmd.add_option("--mode", fit.mode, "iso or aniso")->capture_default_str();
  cmd.add_option("--basis", fit.basis, "gaussian, mq, imq or tps")->capture_default_str();
  cmd.add_option("--c", fit.c, "Shape parameter")->capture_default_str();
  cmd.add_option("--lambda", fit.lambda, "Diagonal regularization")->capture_default_str();
}

void add_sample_options(CLI::App& cmd, SampleArgs& sample) {
  cmd.add_option("--resolution", sample.resolution, "Samples along the longest axis")->capture_default_str();
  cmd.add_option("--pad", sample.pad, "Box padding as a fraction of its diagonal")->capture_default_str();
  cmd.add_option("--workers", sample.workers, "Sampling threads (0 = auto; default ARBF_WORKERS)");
}

CenterMode parse_mode(const std::string& mode) {
  if (mode == "iso" || mode == "isotropic") return CenterMode::Isotropic;
  if (mode == "aniso" || mode == "anisotropic") return CenterMode::Anisotropic;
  throw ValidationError("unknown mode '" + mode + "' (expected iso or aniso)");
}

std::string iso_suffix(double iso) { return fmt::format("_iso{}", iso); }

fs::path default_stem(const std::string& input) { return fs::path(input).replace_extension(); }

VolumetricMesh load(const MeshArgs& mesh) { return load_mesh(mesh.path, mesh.resolved_format()); }

InterpolationModel do_fit(const MeshArgs& mesh_args, const FitArgs& args, std::ostream& out) {
  const VolumetricMesh mesh = load(mesh_args);
  const CenterMode mode = parse_mode(args.mode);
  const BasisKind basis{parse_basis_type(args.basis), args.c};
  auto model = fit(assemble_center_set(mesh, mode), basis, mode, args.lambda);
  const auto points = std::count_if(model.centers.begin(), model.centers.end(),
                                    [](const InterpolationCenter& c) { return c.is_point(); });
  out << fmt::format("centers N={} (points {}, segments {})\n", model.centers.size(), points,
                     model.centers.size() - static_cast<std::size_t>(points));
  out << fmt::format("condition estimate (max/min pivot) {:.6g}\n", model.pivot_ratio);
  out << fmt::format("residual inf-norm {:.3e}\n", model.residual);
  if (model.pivot_ratio > 1e12)
    out << "warning: interpolation matrix is badly conditioned; consider --lambda\n";
  return model;
}

bool is_planar(const InterpolationModel& model) {
  const auto z0 = model.centers.front().is_point() ? model.centers.front().point().position.z
                                                   : model.centers.front().segment().a.z;
  for (const auto& c : model.centers) {
    if (c.is_point() && c.point().position.z != z0) return false;
    if (c.is_segment() && (c.segment().a.z != z0 || c.segment().b.z != z0)) return false;
  }
  return true;
}

VoxelGrid do_sample(const InterpolationModel& model, const SampleArgs& args, std::ostream& out) {
  std::vector<Point3> sites;
  for (const auto& c : model.centers) {
    if (c.is_point()) {
      sites.push_back(c.point().position);
    } else {
      sites.push_back(c.segment().a);
      sites.push_back(c.segment().b);
    }
  }
  const BoundingBox box = bounding_box(sites);
  VoxelGrid grid = is_planar(model) ? make_grid_2d(box.min, box.max, args.resolution, args.pad)
                                    : make_grid(box.min, box.max, args.resolution, args.pad);
  grid = sample_field(std::cref(model), std::move(grid), args.resolved_workers());
  const auto range = value_range(grid);
  out << fmt::format("sampled {}x{}x{} voxels, range [{:.6g}, {:.6g}]\n", grid.nx(), grid.ny(), grid.nz(), range.min,
                     range.max);
  return grid;
}

int do_iso(const VoxelGrid& grid, const std::vector<double>& isos, const fs::path& stem, int workers,
           std::ostream& out, std::ostream& err) {
  if (isos.empty()) throw ValidationError("no iso-values given");
  const auto range = value_range(grid);
  if (grid.nz() == 1) {
    const fs::path pgm = stem.string() + ".pgm";
    export_pgm(grid, pgm, range.min, range.max > range.min ? range.max : range.min + 1.0);
    out << fmt::format("wrote {}\n", pgm.string());
  }
  for (double iso : isos) {
    const fs::path path = stem.string() + iso_suffix(iso) + ".obj";
    const double fraction = solid_fraction(grid, iso);
    std::size_t elements = 0;
    if (grid.nz() == 1) {
      const ContourSet contours = marching_squares(grid, iso);
      export_obj(contours, path);
      elements = contours.polylines.size();
      out << fmt::format("iso {} -> {} polylines, solid fraction {:.6f}, {}\n", iso, elements, fraction, path.string());
    } else {
      const TriangleSoup soup = marching_cubes(grid, iso, workers);
      export_obj(soup, path);
      elements = soup.triangles.size();
      out << fmt::format("iso {} -> {} triangles, solid fraction {:.6f}, {}\n", iso, elements, fraction, path.string());
    }
    if (elements == 0)
      err << fmt::format("warning: iso {} is outside the volume range [{:.6g}, {:.6g}]; output is empty\n", iso,
                         range.min, range.max);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Porous scaffold construction by anisotropic RBF interpolation of volumetric meshes", "arbf"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file supplying any flag");

  MeshArgs mesh;
  FitArgs fit_args;
  SampleArgs sample_args;
  std::string model_path, volume_stem, out_path;
  std::vector<double> isos;

  auto* fit_cmd = app.add_subcommand("fit", "Fit an interpolation model to a mesh");
  add_mesh_options(*fit_cmd, mesh);
  add_fit_options(*fit_cmd, fit_args);
  fit_cmd->add_option("--out", out_path, "Model file (default <mesh stem>.arbf)");

  auto* sample_cmd = app.add_subcommand("sample", "Sample a model on a voxel grid");
  sample_cmd->add_option("--model", model_path, "Model file")->required();
  add_sample_options(*sample_cmd, sample_args);
  sample_cmd->add_option("--out", out_path, "Volume stem (default <model stem>)");

  auto* iso_cmd = app.add_subcommand("iso", "Extract iso-surfaces from a volume");
  iso_cmd->add_option("--volume", volume_stem, "Volume stem (.vhdr/.raw)")->required();
  iso_cmd->add_option("--iso", isos, "Comma-separated iso-values")->delimiter(',')->required()->allow_extra_args(false);
  iso_cmd->add_option("--out", out_path, "Output stem (default volume stem)");
  iso_cmd->add_option("--workers", sample_args.workers, "Extraction threads");

  TpmsKind tpms;
  std::string tpms_name = "p";
  double domain = 2.0 * std::numbers::pi;
  std::vector<double> tpms_isos{0.0};
  auto* tpms_cmd = app.add_subcommand("tpms", "Sample a TPMS field over one cube and extract surfaces");
  tpms_cmd->add_option("--kind", tpms_name, "p, d, g or iwp")->capture_default_str();
  tpms_cmd->add_option("--resolution", sample_args.resolution, "Samples per axis")->capture_default_str();
  tpms_cmd->add_option("--domain", domain, "Cube edge length; the cube is [0, domain]^3")->capture_default_str();
  tpms_cmd->add_option("--px", tpms.px, "Angular frequency along x")->capture_default_str();
  tpms_cmd->add_option("--py", tpms.py, "Angular frequency along y")->capture_default_str();
  tpms_cmd->add_option("--pz", tpms.pz, "Angular frequency along z")->capture_default_str();
  tpms_cmd->add_option("--iso", tpms_isos, "Comma-separated iso-values")->delimiter(',')->allow_extra_args(false);
  tpms_cmd->add_option("--out", out_path, "Output stem (default tpms_<kind>)");
  tpms_cmd->add_option("--workers", sample_args.workers, "Sampling threads");

  PerturbSpec perturb;
  auto* perturb_cmd = app.add_subcommand("perturb", "Randomly displace mesh vertices");
  add_mesh_options(*perturb_cmd, mesh);
  perturb_cmd->add_option("--seed", perturb.seed, "RNG seed")->capture_default_str();
  perturb_cmd->add_option("--magnitude", perturb.magnitude, "Displacement / shortest incident edge, <= 0.3")
      ->capture_default_str();
  perturb_cmd->add_option("--fraction", perturb.vertex_fraction, "Fraction of vertices moved")->capture_default_str();
  perturb_cmd->add_option("--out", out_path, "Output mesh (default <stem>_perturbed.<ext>)");

  auto* pipeline_cmd = app.add_subcommand("pipeline", "fit, sample and iso in one run");
  add_mesh_options(*pipeline_cmd, mesh);
  add_fit_options(*pipeline_cmd, fit_args);
  add_sample_options(*pipeline_cmd, sample_args);
  pipeline_cmd->add_option("--iso", isos, "Comma-separated iso-values")->delimiter(',')->required()->allow_extra_args(false);
  pipeline_cmd->add_option("--out", out_path, "Output stem (default <mesh stem>)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    if (auto subs = app.get_subcommands(); !subs.empty()) out << subs.front()->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? kOk : kInputError;
  }

  try {
    if (*fit_cmd) {
      const auto model = do_fit(mesh, fit_args, out);
      const fs::path path = out_path.empty() ? default_stem(mesh.path).string() + ".arbf" : out_path;
      write_model(model, path);
      out << fmt::format("wrote {}\n", path.string());
    } else if (*sample_cmd) {
      const auto model = read_model(model_path);
      const auto grid = do_sample(model, sample_args, out);
      const fs::path stem = out_path.empty() ? default_stem(model_path) : fs::path(out_path);
      write_volume(grid, stem);
      out << fmt::format("wrote {}.vhdr/.raw\n", stem.string());
    } else if (*iso_cmd) {
      const auto grid = read_volume(volume_stem);
      return do_iso(grid, isos, out_path.empty() ? fs::path(volume_stem) : fs::path(out_path),
                    sample_args.resolved_workers(), out, err);
    } else if (*tpms_cmd) {
      tpms.type = parse_tpms_type(tpms_name);
      if (!(tpms.px > 0.0 && tpms.py > 0.0 && tpms.pz > 0.0)) throw ValidationError("TPMS periods must be positive");
      VoxelGrid grid = make_grid({0.0, 0.0, 0.0}, {domain, domain, domain}, sample_args.resolution, 0.0);
      grid = sample_field(tpms, std::move(grid), sample_args.resolved_workers());
      const fs::path stem = out_path.empty() ? fs::path("tpms_" + tpms_name) : fs::path(out_path);
      write_volume(grid, stem);
      out << fmt::format("wrote {}.vhdr/.raw ({}^3)\n", stem.string(), grid.nx());
      return do_iso(grid, tpms_isos, stem, sample_args.resolved_workers(), out, err);
    } else if (*perturb_cmd) {
      const VolumetricMesh input = load(mesh);
      const MeshFormat format = mesh.resolved_format();
      const auto perturbed = perturb_mesh(input, perturb);
      fs::path path = out_path;
      if (path.empty()) {
        const fs::path in(mesh.path);
        const std::string ext = format == MeshFormat::NodeEle ? ".node" : in.extension().string();
        path = default_stem(mesh.path).string() + "_perturbed" + ext;
      }
      write_mesh(perturbed, path, format);
      out << fmt::format("moved vertices of {} with seed {}, wrote {}\n", mesh.path, perturb.seed, path.string());
    } else if (*pipeline_cmd) {
      if (isos.empty()) throw ValidationError("no iso-values given");
      const fs::path stem = out_path.empty() ? default_stem(mesh.path) : fs::path(out_path);
      const auto model = do_fit(mesh, fit_args, out);
      write_model(model, stem.string() + ".arbf");
      const auto grid = do_sample(model, sample_args, out);
      write_volume(grid, stem);
      return do_iso(grid, isos, stem, sample_args.resolved_workers(), out, err);
    }
  } catch (const SingularMatrixError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const DegenerateResultError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

}  // namespace arbf::cli

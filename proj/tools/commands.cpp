#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include "hosdt/eval.hpp"
#include "hosdt/init.hpp"
#include "hosdt/io.hpp"
#include "hosdt/solver.hpp"
#include "hosdt/studies.hpp"

namespace hosdt::cli {

namespace {

namespace fs = std::filesystem;

BinaryGrid read_binary(const fs::path& path) {
  Volume v = read_volume(path);
  if (auto* grid = std::get_if<BinaryGrid>(&v)) return std::move(*grid);
  throw Error("expected a u8 volume: " + path.string());
}

ScalarField read_field(const fs::path& path) {
  Volume v = read_volume(path);
  if (auto* field = std::get_if<ScalarField>(&v)) return std::move(*field);
  throw Error("expected an f64 volume: " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error("cannot create output directory '" + dir.string() + "'");
}

std::string report_json(const SolverReport& report) {
  nlohmann::json j;
  j["error_history"] = report.error_history;
  j["iterations"] = report.iterations_run;
  j["converged"] = report.converged;
  j["shifts"] = report.shift_history;
  return j.dump(2) + "\n";
}

struct TransformArgs {
  std::string input, output, report;
  int order = 5;
  int max_iters = 100;
  double tol = 1e-6;
  double band = std::numeric_limits<double>::infinity();
  bool no_shift = false;
};

struct SphereArgs {
  std::size_t size = 0;
  double extent = 0.0;
  double radius = 0.0;
  std::vector<double> center;
  std::size_t ndim = 3;
  bool binarize = false;
  int noise_order = -1;
  std::string output;
};

struct CompareArgs {
  std::string a, b;
  double band = std::numeric_limits<double>::infinity();
  bool minimize_shift = false;
};

struct StudyArgs {
  std::string output_dir;
  std::vector<double> spacings;
  double extent = 0.0;
  double radius = 0.0;
  double band = 0.0;
  int order = 5;
  int max_iters = 100;
  double tol = 1e-6;
};

// Accepts any value > 0, including inf.
const CLI::Validator kPositiveOrInf(
    [](std::string& text) {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(text, v) || !(v > 0.0)) return std::string("must be > 0 (inf allowed)");
      return std::string();
    },
    "POSITIVE|inf");

void add_solver_flags(CLI::App* cmd, StudyArgs& a) {
  cmd->add_option("--order", a.order, "Scheme order")->check(CLI::IsMember({1, 5}))->capture_default_str();
  cmd->add_option("--max-iters", a.max_iters, "Iteration cap")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--tol", a.tol, "Convergence threshold (mm)")->check(CLI::PositiveNumber)->capture_default_str();
}

SolverConfig study_solver(const StudyArgs& a) {
  SolverConfig cfg;
  cfg.order = a.order;
  cfg.max_iterations = a.max_iters;
  cfg.tolerance = a.tol;
  cfg.narrowband_width = a.band;
  return cfg;
}

int cmd_transform(const TransformArgs& a) {
  SolverConfig cfg;
  cfg.order = a.order;
  cfg.max_iterations = a.max_iters;
  cfg.tolerance = a.tol;
  cfg.narrowband_width = a.band;
  cfg.shift_correction = !a.no_shift;
  cfg.validate();
  const BinaryGrid image = read_binary(a.input);
  const SolveResult result = run(image, cfg);
  write_volume(a.output, result.field);
  if (!a.report.empty()) write_text(a.report, report_json(result.report));
  return 0;
}

int cmd_init(const std::string& input, const std::string& output) {
  write_volume(output, averaged_init(read_binary(input)));
  return 0;
}

int cmd_sphere(SphereArgs a) {
  const double h = a.extent / static_cast<double>(a.size);
  if (a.center.empty()) a.center.assign(a.ndim, a.extent / 2.0);
  if (a.center.size() != a.ndim) throw Error("--center needs one value per axis");
  const Lattice lat(std::vector<std::size_t>(a.ndim, a.size), std::vector<double>(a.ndim, h));
  ScalarField phi = analytic_sphere(lat, a.center, a.radius);
  if (a.noise_order >= 0) phi = add_order_m_noise(phi, a.noise_order, h);
  if (a.binarize) {
    write_volume(a.output, binarize(phi));
  } else {
    write_volume(a.output, phi);
  }
  return 0;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const ScalarField lhs = read_field(a.a);
  const ScalarField rhs = read_field(a.b);
  if (!(lhs.lattice == rhs.lattice)) throw Error("lattice mismatch");
  if (a.minimize_shift) {
    const ShiftedField shifted = minimize_l1_shift(lhs, rhs, a.band);
    const ErrorNorms n = error_norms(shifted.field, rhs, a.band);
    out << format_decimal(n.l1) << "," << format_decimal(n.linf) << ","
        << format_decimal(shifted.shift) << "\n";
  } else {
    const ErrorNorms n = error_norms(lhs, rhs, a.band);
    out << format_decimal(n.l1) << "," << format_decimal(n.linf) << "\n";
  }
  return 0;
}

int cmd_study_order(const StudyArgs& a) {
  prepare_dir(a.output_dir);
  OrderStudyOptions opts;
  opts.spacings = a.spacings;
  opts.extent = a.extent;
  opts.radius = a.radius;
  opts.band = a.band;
  opts.solver = study_solver(a);
  const OrderStudy study = run_order_study(opts);
  write_study_csv(fs::path(a.output_dir) / "order_study.csv", study.records);
  return 0;
}

int cmd_study_convergence(const StudyArgs& a) {
  prepare_dir(a.output_dir);
  ConvergenceOptions opts;
  opts.spacings = a.spacings;
  opts.extent = a.extent;
  opts.radius = a.radius;
  opts.solver = study_solver(a);
  write_text(fs::path(a.output_dir) / "convergence.csv",
             format_convergence_csv(run_convergence_study(opts)));
  return 0;
}

int cmd_study_noise(const StudyArgs& a) {
  prepare_dir(a.output_dir);
  if (a.spacings.size() != 1) throw Error("noise study takes a single --spacing");
  NoiseStudyOptions opts;
  opts.h = a.spacings.front();
  opts.extent = a.extent;
  opts.radius = a.radius;
  opts.band = a.band;
  opts.solver = study_solver(a);
  const NoiseStudy study = run_noise_study(opts);
  for (const auto& f : study.fields) {
    write_volume(fs::path(a.output_dir) / ("noise_" + f.name + ".hosdt"), f.field);
  }
  write_text(fs::path(a.output_dir) / "noise_norms.csv", format_noise_csv(study));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-order signed distance transform of binary volumes"};
  app.require_subcommand(1);

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "Signed fast sweeping transform of a u8 volume");
  transform->add_option("--input", ta.input, "Binary HOSDT1 volume")->required();
  transform->add_option("--output", ta.output, "Output f64 volume")->required();
  transform->add_option("--order", ta.order, "Scheme order")->check(CLI::IsMember({1, 5}))->capture_default_str();
  transform->add_option("--max-iters", ta.max_iters, "Iteration cap")->check(CLI::NonNegativeNumber)->capture_default_str();
  transform->add_option("--tol", ta.tol, "Convergence threshold (mm)")->check(CLI::PositiveNumber)->capture_default_str();
  transform->add_option("--band", ta.band, "Narrowband half-width (mm), inf for the whole image")->check(kPositiveOrInf);
  transform->add_flag("--no-shift", ta.no_shift, "Disable shift correction");
  transform->add_option("--report", ta.report, "Write a JSON solver report");

  std::string init_in, init_out;
  auto* init = app.add_subcommand("init", "Averaged exact signed distance initialization");
  init->add_option("--input", init_in, "Binary HOSDT1 volume")->required();
  init->add_option("--output", init_out, "Output f64 volume")->required();

  SphereArgs sa;
  auto* sphere = app.add_subcommand("sphere", "Analytic sphere signed distance field");
  sphere->add_option("--size", sa.size, "Samples per axis")->required()->check(CLI::PositiveNumber);
  sphere->add_option("--extent", sa.extent, "Physical edge length (mm)")->required()->check(CLI::PositiveNumber);
  sphere->add_option("--radius", sa.radius, "Radius (mm)")->required()->check(CLI::PositiveNumber);
  sphere->add_option("--center", sa.center, "Center (mm), one value per axis; default extent/2");
  sphere->add_option("--ndim", sa.ndim, "Dimensionality")->check(CLI::Range(1, static_cast<int>(kMaxDims)))->capture_default_str();
  sphere->add_flag("--binarize", sa.binarize, "Write the thresholded u8 image");
  sphere->add_option("--noise-order", sa.noise_order, "Add h^m sinusoidal noise of order m")->check(CLI::NonNegativeNumber);
  sphere->add_option("--output", sa.output, "Output volume")->required();

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "Banded l1/linf difference of two f64 volumes");
  compare->add_option("--a", ca.a, "Computed field")->required();
  compare->add_option("--b", ca.b, "Reference field")->required();
  compare->add_option("--band", ca.band, "Band |b| <= band (mm)")->check(kPositiveOrInf);
  compare->add_flag("--minimize-shift", ca.minimize_shift, "Subtract the l1-optimal constant first");

  auto* study = app.add_subcommand("study", "Reproduce the sphere studies");
  study->require_subcommand(1);

  StudyArgs order_args{.output_dir = {}, .spacings = {8.0, 4.0, 2.0, 1.0}, .extent = 100.0, .radius = 25.0, .band = 15.0};
  auto* order = study->add_subcommand("order", "Order-of-accuracy table");
  order->add_option("--output-dir", order_args.output_dir, "Output directory")->required();
  order->add_option("--spacings", order_args.spacings, "Spacings (mm), coarse to fine")->capture_default_str();
  order->add_option("--extent", order_args.extent, "Domain edge (mm)")->capture_default_str();
  order->add_option("--radius", order_args.radius, "Sphere radius (mm)")->capture_default_str();
  order->add_option("--band", order_args.band, "Narrowband (mm)")->capture_default_str();
  add_solver_flags(order, order_args);

  StudyArgs conv_args{.output_dir = {}, .spacings = {4.0, 2.0, 1.0}, .extent = 100.0, .radius = 25.0, .band = 15.0};
  auto* convergence = study->add_subcommand("convergence", "Per-iteration error history");
  convergence->add_option("--output-dir", conv_args.output_dir, "Output directory")->required();
  convergence->add_option("--spacings", conv_args.spacings, "Spacings (mm)")->capture_default_str();
  convergence->add_option("--extent", conv_args.extent, "Domain edge (mm)")->capture_default_str();
  convergence->add_option("--radius", conv_args.radius, "Sphere radius (mm)")->capture_default_str();
  convergence->add_option("--band", conv_args.band, "Narrowband (mm)")->capture_default_str();
  add_solver_flags(convergence, conv_args);

  StudyArgs noise_args{.output_dir = {}, .spacings = {0.1}, .extent = 10.0, .radius = 2.5, .band = 1.5};
  auto* noise = study->add_subcommand("noise", "Noise comparison fields");
  noise->add_option("--output-dir", noise_args.output_dir, "Output directory")->required();
  noise->add_option("--spacing", noise_args.spacings, "Spacing (mm)")->expected(1)->capture_default_str();
  noise->add_option("--extent", noise_args.extent, "Domain edge (mm)")->capture_default_str();
  noise->add_option("--radius", noise_args.radius, "Sphere radius (mm)")->capture_default_str();
  noise->add_option("--band", noise_args.band, "Narrowband (mm)")->capture_default_str();
  add_solver_flags(noise, noise_args);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (transform->parsed()) return cmd_transform(ta);
    if (init->parsed()) return cmd_init(init_in, init_out);
    if (sphere->parsed()) return cmd_sphere(sa);
    if (compare->parsed()) return cmd_compare(ca, out);
    if (order->parsed()) return cmd_study_order(order_args);
    if (convergence->parsed()) return cmd_study_convergence(conv_args);
    if (noise->parsed()) return cmd_study_noise(noise_args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hosdt::cli

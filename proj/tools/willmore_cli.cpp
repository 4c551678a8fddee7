// willmore: surfaces from normalized potentials, shipped examples, and the invariant suite.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "willmore/closed_form.hpp"
#include "willmore/io.hpp"
#include "willmore/verify.hpp"

using namespace willmore;
namespace fs = std::filesystem;

namespace {

constexpr double kCompareTol = 1e-9;

struct MeshArgs {
  std::string lambda = "1";
  std::string grid_n = "32";
  std::string radius = "1";
  std::string grid = "polar";
  std::string out = ".";
  std::string format = "csv";
};

void add_mesh_flags(CLI::App* cmd, MeshArgs& a) {
  cmd->add_option("--lambda", a.lambda, "point of the unit circle: re,im | i | @turns")->capture_default_str();
  cmd->add_option("--grid-n", a.grid_n, "grid resolution")->capture_default_str();
  cmd->add_option("--radius", a.radius, "disk radius, p/q allowed")->capture_default_str();
  cmd->add_option("--grid", a.grid, "polar or cartesian")
      ->check(CLI::IsMember({"polar", "cartesian"}))
      ->capture_default_str();
  cmd->add_option("--out", a.out, "output directory")->capture_default_str();
  cmd->add_option("--format", a.format, "csv, or obj (m = 2; the CSV is written as well)")
      ->check(CLI::IsMember({"csv", "obj"}))
      ->capture_default_str();
}

GridSpec grid_of(const MeshArgs& a) {
  GridSpec g;
  g.kind = a.grid == "cartesian" ? GridKind::Cartesian : GridKind::Polar;
  g.n = parse_positive_int(a.grid_n);
  g.radius = parse_real(a.radius);
  if (!(g.radius > 0)) throw ParseError("radius must be positive", 1, 1);
  return g;
}

Mesh write_mesh(const NormalizedPotential& p, const MeshArgs& a) {
  const LambdaSpec lam = parse_lambda(a.lambda);
  const GridSpec grid = grid_of(a);
  if (a.format == "obj" && p.m != 2) throw Error("--format obj needs m = 2");
  const HolomorphicFrame hf = integrate_frame(to_nilpotent(p));
  const Mesh mesh = build_mesh(hf, grid, lam.value);
  fs::create_directories(a.out);
  write_file((fs::path(a.out) / "mesh.csv").string(), mesh_csv(mesh));
  if (a.format == "obj") write_file((fs::path(a.out) / "mesh.obj").string(), mesh_obj(mesh));
  return mesh;
}

int count_flagged(const Mesh& mesh) {
  int n = 0;
  for (const MeshVertex& v : mesh.vertices) n += v.singular;
  return n;
}

int cmd_example(int id, const MeshArgs& a) {
  if (id != 1 && id != 2) throw Error("--id must be 1 or 2");
  const Mesh mesh = write_mesh(example_potential(id), a);
  const ExactPair cf = closed_form_pair(id);
  double dev_y = 0.0, dev_yh = 0.0;
  int compared = 0;
  for (const MeshVertex& v : mesh.vertices) {
    if (v.singular) continue;
    try {
      dev_y = std::max(dev_y, projective_distance(v.Y.cast<cplx>(), cf.evaluate(Which::Y, v.z, mesh.lambda)));
      dev_yh = std::max(dev_yh, projective_distance(v.Yhat.cast<cplx>(), cf.evaluate(Which::Yhat, v.z, mesh.lambda)));
      ++compared;
    } catch (const DenominatorVanishes&) {
    }
  }
  const bool pass = compared > 0 && dev_y < kCompareTol && dev_yh < kCompareTol;
  nlohmann::ordered_json r;
  r["example"] = id;
  r["lambda"] = {mesh.lambda.real(), mesh.lambda.imag()};
  r["vertices"] = mesh.vertices.size();
  r["flagged"] = count_flagged(mesh);
  r["compared"] = compared;
  r["max_projective_deviation_Y"] = dev_y;
  r["max_projective_deviation_Yhat"] = dev_yh;
  r["tolerance"] = kCompareTol;
  r["pass"] = pass;
  write_file((fs::path(a.out) / "comparison.json").string(), r.dump(2) + "\n");
  std::cout << "example " << id << ": " << mesh.vertices.size() << " vertices, " << count_flagged(mesh)
            << " flagged, max projective deviation " << std::max(dev_y, dev_yh) << (pass ? " (pass)" : " (FAIL)")
            << "\n";
  return pass ? 0 : 1;
}

int cmd_synth(const std::string& path, const MeshArgs& a) {
  const NormalizedPotential p = load_potential(path);
  if (!p.pairing_holds()) std::cerr << "warning: B1 B1^t is not zero; the file is not a normalized potential\n";
  const Classification c = rank_and_classify(p);
  const Mesh mesh = write_mesh(p, a);
  std::cout << "m = " << p.m << ", rank " << c.rank << ", shape " << to_string(c.tag);
  if (!c.note.empty()) std::cout << " (" << c.note << ")";
  std::cout << "\n" << mesh.vertices.size() << " vertices, " << count_flagged(mesh) << " flagged\n";
  return 0;
}

std::vector<cplx> lambda_list(const std::string& s) {
  std::vector<cplx> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ';');) out.push_back(parse_lambda(part).value);
  if (out.empty()) throw ParseError("empty lambda list", 1, 1);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Totally isotropic Willmore two-spheres and their adjoint transforms from normalized potentials.\n"
               "Threads: WILLMORE_THREADS (default: all cores)."};
  app.require_subcommand(1);

  int id = 1;
  MeshArgs ex_args, syn_args;
  auto* example = app.add_subcommand("example", "run a shipped example and compare with its closed form");
  example->add_option("--id", id, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  add_mesh_flags(example, ex_args);

  std::string potential;
  auto* synth = app.add_subcommand("synth", "mesh of (Y, Yhat) for a potential file");
  synth->add_option("--potential", potential, "potential JSON file")->required();
  add_mesh_flags(synth, syn_args);

  std::string v_potential, samples = "50", v_radius = "9/10", seed = "1", tol = "1e-10", tol_fd = "1e-6",
              fd_clearance = "1/20", lambdas = "1;i", report;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run the invariant suite; exit 0 iff every check passes");
  verify->add_option("--potential", v_potential, "potential JSON file")->required();
  verify->add_option("--samples", samples)->capture_default_str();
  verify->add_option("--radius", v_radius)->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--tol", tol, "tolerance of the algebraic checks")->capture_default_str();
  verify->add_option("--tol-fd", tol_fd, "tolerance of the finite-difference checks")->capture_default_str();
  verify->add_option("--fd-clearance", fd_clearance, "finite-difference checks skip samples this close to a singular radius")
      ->capture_default_str();
  verify->add_option("--lambdas", lambdas, "';'-separated points of the unit circle")->capture_default_str();
  verify->add_option("--report", report, "JSON report path, '-' for stdout");
  verify->add_flag("--timing", timing, "include wall-clock time (the report is then not reproducible)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*example) return cmd_example(id, ex_args);
    if (*synth) return cmd_synth(potential, syn_args);
    SamplePlan plan;
    plan.samples = parse_positive_int(samples);
    plan.radius = parse_real(v_radius);
    const GaussianRational s = GaussianRational::parse(seed);
    if (s.re().get_den() != 1 || s.re() < 0) throw ParseError("seed must be a non-negative integer", 1, 1);
    plan.seed = std::stoull(s.re().get_str());
    plan.tol_alg = parse_real(tol);
    plan.tol_fd = parse_real(tol_fd);
    plan.fd_clearance = parse_real(fd_clearance);
    plan.lambdas = lambda_list(lambdas);
    plan.timing = timing;
    const VerificationReport r = run_suite(load_potential(v_potential), plan);
    const std::string json = to_json(r);
    if (report == "-") std::cout << json;
    else if (!report.empty()) write_file(report, json);
    for (const CheckResult& c : r.checks)
      if (!c.pass) std::cerr << "FAIL " << c.name << ": " << c.max_residual << " > " << c.tolerance << "\n";
    if (!r.singular_radii.empty()) {
      std::cerr << "singular radii on theta = 0:";
      for (double x : r.singular_radii) std::cerr << " " << x;
      std::cerr << "\n";
    }
    return r.all_pass() ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

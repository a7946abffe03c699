#include "weylscope/boundary_operator.hpp"
#include "weylscope/enclosures.hpp"
#include "weylscope/grid.hpp"
#include "weylscope/io.hpp"
#include "weylscope/models.hpp"
#include "weylscope/secular.hpp"
#include "weylscope/svg.hpp"
#include "weylscope/sweep.hpp"
#include "weylscope/verify_suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace weylscope;
using nlohmann::json;

// exit codes: 0 ok, 2 usage/config, 3 budget exhaustion, 4 verification failure
constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;
constexpr int exit_verify = 4;

struct Options {
  std::string model_path, b_path, grid, rect, regions_path, out_path, svg_path;
  std::string viewport, suites;
  double tol = 1e-11;
  double mu = -1.0;
  std::uint64_t seed = 1;
  int threads = 1;
  bool entries = false;
};

Complex parse_complex_token(const std::string& tok) {
  // forms: "a", "a+bi", "a-bi", "bi"
  std::string s = tok;
  if (s.empty()) throw Error("empty complex literal");
  if (s.back() == 'i') {
    s.pop_back();
    size_t split = s.find_last_of("+-");
    if (split == std::string::npos || split == 0) {
      // pure imaginary
      if (s.empty() || s == "+") return Complex(0.0, 1.0);
      if (s == "-") return Complex(0.0, -1.0);
      return Complex(0.0, std::stod(s));
    }
    const std::string re = s.substr(0, split);
    std::string im = s.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return Complex(std::stod(re), std::stod(im));
  }
  return Complex(std::stod(s), 0.0);
}

std::pair<Complex, Complex> parse_rect(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw Error("rect must be 'a+bi,c+di' (bottom-left, top-right)");
  const Complex lo = parse_complex_token(spec.substr(0, comma));
  const Complex hi = parse_complex_token(spec.substr(comma + 1));
  return {lo, hi};
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw Error("cannot open output file: " + path);
  return file;
}

models::WeylModel require_model(const Options& opt) {
  if (opt.model_path.empty()) throw Error("--model is required");
  return io::load_model(opt.model_path);
}

core::BoundaryOperator require_boundary(const Options& opt,
                                        const models::WeylModel& model) {
  if (opt.b_path.empty()) throw Error("--B is required");
  const Matrix b = io::load_boundary_matrix(opt.b_path);
  if (b.rows() != model.boundary_dim())
    throw Error("boundary operator dimension " + std::to_string(b.rows()) +
                " does not match model boundary dimension " +
                std::to_string(model.boundary_dim()));
  return core::analyze_boundary_operator(b);
}

enclosures::DecayEstimate decay_for(const models::WeylModel& model,
                                    double mu) {
  if (auto closed = enclosures::closed_form_decay(model, mu)) return *closed;
  const double top = model.spectrum_base();
  return enclosures::fitted_decay_for_model(model, top, 1e-2, 1e6, 120);
}

int cmd_weyl(const Options& opt) {
  const auto model = require_model(opt);
  if (opt.grid.empty()) throw Error("weyl: --grid is required");
  const auto grid = parse_grid(opt.grid);
  const auto points = sweep_norms(model, grid, opt.threads);
  std::ofstream file;
  std::ostream& os = open_output(file, opt.out_path);
  io::write_weyl_csv(os, model, points, opt.entries);
  return exit_ok;
}

int cmd_bound(const Options& opt) {
  const auto model = require_model(opt);
  const auto d = decay_for(model, opt.mu);
  std::ofstream file;
  std::ostream& os = open_output(file, opt.out_path);
  os << io::decay_to_json(d).dump(2) << "\n";
  return exit_ok;
}

int cmd_enclose(const Options& opt) {
  const auto model = require_model(opt);
  std::optional<core::BoundaryOperator> b;
  if (!opt.b_path.empty()) {
    const Matrix bm = io::load_boundary_matrix(opt.b_path);
    if (bm.rows() != model.boundary_dim())
      throw Error("boundary operator dimension mismatch");
    b = core::analyze_boundary_operator(bm);
  }
  if (opt.regions_path.empty()) throw Error("enclose: --regions is required");
  std::ifstream in(opt.regions_path);
  if (!in) throw Error("cannot open regions file: " + opt.regions_path);
  json jreq;
  in >> jreq;
  const auto requests = io::parse_region_requests(jreq);

  json out = json::array();
  std::vector<enclosures::EnclosureRegion> built;
  for (const auto& req : requests) {
    try {
      auto decay = req.decay ? *req.decay : decay_for(model, opt.mu);
      if (req.tag == "sector") {
        if (!b) throw Error("sector region needs --B");
        const auto sample = model.weyl(Complex(*req.eta, 0.0));
        if (!sample.matrix) throw Error("sector region needs a matrix model");
        const auto r = enclosures::sector_enclosure(*sample.matrix, *req.eta, *b);
        built.push_back(r);
        out.push_back(io::region_to_json(r));
      } else if (req.tag == "parabola") {
        if (!b) throw Error("parabola region needs --B");
        const auto r = enclosures::parabola_enclosure(decay, *b, req.xi);
        built.push_back(r);
        out.push_back(io::region_to_json(r));
      } else if (req.tag == "left_resolvent_free") {
        if (!b) throw Error("left_resolvent_free region needs --B");
        const auto r = enclosures::left_resolvent_free(&model, *b, decay);
        built.push_back(r);
        out.push_back(io::region_to_json(r));
      } else if (req.tag == "dist_disk") {
        if (!b) throw Error("dist_disk region needs --B");
        const auto r = enclosures::dist_enclosure(
            decay, b->norm(),
            req.dist_mode == "point" ? enclosures::DistMode::ToPoint
                                     : enclosures::DistMode::ToSpectrum,
            model.spectrum_base());
        built.push_back(r);
        out.push_back(io::region_to_json(r));
      } else if (req.tag == "log_regions") {
        const auto [v, w] =
            enclosures::delta_log_regions(*req.c1, *req.c2, req.dim_class);
        built.push_back(v);
        built.push_back(w);
        out.push_back(io::region_to_json(v));
        out.push_back(io::region_to_json(w));
      }
    } catch (const Error& e) {
      out.push_back(json{{"tag", req.tag}, {"error", e.what()}});
    }
  }

  std::ofstream file;
  std::ostream& os = open_output(file, opt.out_path);
  os << json{{"schema_version", io::schema_version}, {"regions", out}}.dump(2)
     << "\n";
  if (!opt.svg_path.empty()) {
    if (opt.viewport.empty())
      throw Error("--svg needs --viewport \"a+bi,c+di\"");
    const auto [lo, hi] = parse_rect(opt.viewport);
    std::ofstream svg(opt.svg_path);
    if (!svg) throw Error("cannot open svg file: " + opt.svg_path);
    io::write_regions_svg(svg, built, lo, hi);
  }
  return exit_ok;
}

int cmd_spectrum(const Options& opt) {
  const auto model = require_model(opt);
  const auto b = require_boundary(opt, model);
  if (opt.rect.empty()) throw Error("spectrum: --rect is required");
  const auto [lo, hi] = parse_rect(opt.rect);
  solver::SolverOptions sopt;
  sopt.tol = opt.tol;
  sopt.threads = opt.threads;
  sopt.seed = opt.seed;
  auto report = solver::find_eigenvalues(model, b, lo, hi, sopt);

  if (!opt.regions_path.empty()) {
    std::ifstream in(opt.regions_path);
    if (!in) throw Error("cannot open regions file: " + opt.regions_path);
    json jr;
    in >> jr;
    std::vector<enclosures::EnclosureRegion> regions;
    if (jr.is_object() && jr.contains("regions")) {
      for (const auto& r : jr.at("regions"))
        if (!r.contains("error")) regions.push_back(io::region_from_json(r));
    } else {
      for (const auto& r : jr) regions.push_back(io::region_from_json(r));
    }
    solver::verify_containment(report, regions);
  }

  std::ofstream file;
  std::ostream& os = open_output(file, opt.out_path);
  os << io::report_to_json(report).dump(2) << "\n";
  return exit_ok;
}

int cmd_verify(const Options& opt) {
  std::vector<std::string> wanted;
  if (opt.suites.empty() || opt.suites == "all") {
    wanted = verify::suite_names();
  } else {
    std::stringstream ss(opt.suites);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (std::find(verify::suite_names().begin(), verify::suite_names().end(),
                    item) == verify::suite_names().end())
        throw Error("unknown suite '" + item + "'");
      wanted.push_back(item);
    }
  }
  if (wanted.empty()) throw Error("no suites selected");
  bool all_pass = true;
  for (const auto& name : wanted) {
    const auto res = verify::run_suite(name, opt.seed);
    std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << res.name << ": "
              << res.detail << "\n";
    all_pass = all_pass && res.pass;
  }
  return all_pass ? exit_ok : exit_verify;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylscope: Weyl functions, spectral enclosures and "
               "eigenvalues of non-self-adjoint boundary couplings"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--model", opt.model_path, "model definition JSON");
  app.add_option("--B", opt.b_path, "boundary operator JSON (dense complex)");
  app.add_option("--grid", opt.grid, "grid spec re=a:b:n,im=c:d:m or rays");
  app.add_option("--rect", opt.rect, "search rectangle 'a+bi,c+di'");
  app.add_option("--regions", opt.regions_path, "region request/definition file");
  app.add_option("--out", opt.out_path, "output file (default stdout)");
  app.add_option("--svg", opt.svg_path, "SVG output for region boundaries");
  app.add_option("--viewport", opt.viewport, "SVG viewport 'a+bi,c+di'");
  app.add_option("--tol", opt.tol, "solver residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--mu", opt.mu, "reference shift for lattice decay bounds");
  app.add_option("--seed", opt.seed, "random seed for verification corpora");
  app.add_option("--threads", opt.threads, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--suite", opt.suites, "comma-separated verify suites");
  app.add_flag("--entries", opt.entries, "include matrix entries in CSV");

  auto* weyl = app.add_subcommand("weyl", "sweep ||M(lambda)|| over a grid");
  auto* bound = app.add_subcommand("bound", "emit decay-bound constants");
  auto* enclose = app.add_subcommand("enclose", "construct enclosure regions");
  auto* spectrum = app.add_subcommand("spectrum", "locate eigenvalues");
  auto* verify = app.add_subcommand("verify", "run verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (weyl->parsed()) return cmd_weyl(opt);
    if (bound->parsed()) return cmd_bound(opt);
    if (enclose->parsed()) return cmd_enclose(opt);
    if (spectrum->parsed()) return cmd_spectrum(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const weylscope::solver::BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_budget;
  } catch (const weylscope::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

#include "weylscope/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

namespace weylscope::io {

using nlohmann::json;
using enclosures::DecayEstimate;
using enclosures::EnclosureRegion;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed,
                const char* context) {
  if (!j.is_object()) throw Error(std::string(context) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.contains(key))
      throw Error(std::string(context) + ": unknown key '" + key + "'");
  }
}

double number_at(const json& j, const char* key, const char* context) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(std::string(context) + ": missing numeric '" + key + "'");
  return j.at(key).get<double>();
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("complex values must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix parse_complex_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix: expected a non-empty array");
  const size_t rows = j.size();
  size_t cols = 0;
  Matrix m;
  for (size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.empty())
      throw Error("matrix: each row must be a non-empty array");
    if (i == 0) {
      cols = row.size();
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    }
    if (row.size() != cols) throw Error("matrix: ragged rows");
    for (size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_from_json(row[k]);
  }
  return m;
}

models::WeylModel parse_model(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error("model: missing 'kind'");
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "graph") {
    check_keys(j, {"kind", "vertices", "edges"}, "graph model");
    if (!j.contains("vertices") || !j.at("vertices").is_array() ||
        !j.contains("edges") || !j.at("edges").is_array())
      throw Error("graph model: needs 'vertices' and 'edges' arrays");
    const json& vs = j.at("vertices");
    std::map<json, int> index;
    for (size_t i = 0; i < vs.size(); ++i) {
      if (index.contains(vs[i])) throw Error("graph model: duplicate vertex id");
      index[vs[i]] = static_cast<int>(i);
    }
    std::vector<models::GraphEdge> edges;
    for (const json& e : j.at("edges")) {
      check_keys(e, {"from", "to", "length"}, "graph edge");
      if (!e.contains("from") || !e.contains("to") || !e.contains("length"))
        throw Error("graph edge: needs from, to, length");
      const auto it_from = index.find(e.at("from"));
      if (it_from == index.end()) throw Error("graph edge: unknown 'from' vertex");
      const bool to_inf = e.at("to").is_string() && e.at("to") == "inf";
      const bool len_inf = e.at("length").is_string() && e.at("length") == "inf";
      if (to_inf != len_inf)
        throw Error("graph edge: infinite edges need to=\"inf\" and length=\"inf\"");
      if (to_inf) {
        edges.push_back(models::GraphEdge::to_infinity(it_from->second));
        continue;
      }
      const auto it_to = index.find(e.at("to"));
      if (it_to == index.end()) throw Error("graph edge: unknown 'to' vertex");
      if (!e.at("length").is_number())
        throw Error("graph edge: length must be a number or \"inf\"");
      edges.push_back(models::GraphEdge::finite(it_from->second, it_to->second,
                                                e.at("length").get<double>()));
    }
    return models::WeylModel(
        models::MetricGraph(static_cast<int>(vs.size()), std::move(edges)));
  }

  if (kind == "lattice") {
    check_keys(j, {"kind", "points", "d", "window"}, "lattice model");
    if (!j.contains("points") || !j.at("points").is_array())
      throw Error("lattice model: needs a 'points' array");
    std::vector<double> pts;
    for (const json& p : j.at("points")) {
      if (!p.is_number()) throw Error("lattice model: points must be numbers");
      pts.push_back(p.get<double>());
    }
    const double d = number_at(j, "d", "lattice model");
    models::WindowPolicy policy = models::WindowPolicy::exact();
    if (j.contains("window")) {
      const json& w = j.at("window");
      if (w.is_string() && w == "exact") {
        policy = models::WindowPolicy::exact();
      } else if (w.is_object()) {
        check_keys(w, {"tail_tol"}, "lattice window");
        policy = models::WindowPolicy::truncated(
            number_at(w, "tail_tol", "lattice window"));
      } else {
        throw Error("lattice model: window must be \"exact\" or {\"tail_tol\": x}");
      }
    }
    return models::WeylModel(models::PointLattice(std::move(pts), d, policy));
  }

  if (kind == "profile") {
    check_keys(j, {"kind", "profile"}, "profile model");
    if (!j.contains("profile")) throw Error("profile model: missing 'profile'");
    const json& p = j.at("profile");
    if (p.is_string()) {
      if (p == "half_space")
        return models::WeylModel(models::ScalarProfile::half_space());
      if (p == "hyperplane_delta")
        return models::WeylModel(models::ScalarProfile::hyperplane());
      throw Error("profile model: unknown profile '" + p.get<std::string>() + "'");
    }
    if (p.is_object()) {
      check_keys(p, {"star", "kac"}, "profile model");
      if (p.contains("star") && p.contains("kac"))
        throw Error("profile model: choose one of star/kac");
      if (p.contains("star")) {
        if (!p.at("star").is_number_integer())
          throw Error("profile model: star edge count must be an integer");
        return models::WeylModel(
            models::ScalarProfile::star(p.at("star").get<int>()));
      }
      if (p.contains("kac"))
        return models::WeylModel(
            models::ScalarProfile::kac(number_at(p, "kac", "profile model")));
    }
    throw Error("profile model: malformed 'profile'");
  }

  throw Error("model: unknown kind '" + kind + "'");
}

models::WeylModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("model file " + path + ": " + e.what());
  }
  return parse_model(j);
}

Matrix load_boundary_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open boundary operator file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("boundary file " + path + ": " + e.what());
  }
  return parse_complex_matrix(j);
}

json region_to_json(const EnclosureRegion& r) {
  json params = json::object();
  using Tag = EnclosureRegion::Tag;
  switch (r.tag) {
    case Tag::Sector:
      params["eta"] = r.eta;
      params["kappa"] = r.kappa;
      break;
    case Tag::ParabolaA:
      params["mu"] = r.mu;
      params["C"] = r.C;
      params["beta"] = r.beta;
      params["b"] = r.b;
      params["im_b_norm"] = r.im_b_norm;
      params["xi"] = r.xi;
      params["apex"] = r.apex;
      params["k_slope"] = r.k_slope;
      break;
    case Tag::ParabolaB:
      params["mu"] = r.mu;
      params["C"] = r.C;
      params["beta"] = r.beta;
      params["im_b_norm"] = r.im_b_norm;
      params["k_slope"] = r.k_slope;
      break;
    case Tag::ParabolaC:
      params["mu"] = r.mu;
      params["C"] = r.C;
      params["beta"] = r.beta;
      params["b"] = r.b;
      params["im_b_norm"] = r.im_b_norm;
      break;
    case Tag::LeftResolventFree:
      params["threshold"] = r.threshold;
      break;
    case Tag::DistDisk:
      params["radius"] = r.radius;
      params["spectrum_base"] = r.spectrum_base;
      params["C"] = r.C;
      params["beta"] = r.beta;
      break;
    case Tag::PointDisk:
      params["radius"] = r.radius;
      params["mu"] = r.mu;
      break;
    case Tag::LogRegionV:
    case Tag::LogRegionW:
      params["c_alpha"] = r.c_alpha;
      params["n"] = r.dim_class;
      break;
  }
  return json{{"tag", r.tag_name()}, {"params", params}};
}

EnclosureRegion region_from_json(const json& j) {
  check_keys(j, {"tag", "params"}, "region");
  if (!j.contains("tag") || !j.contains("params"))
    throw Error("region: needs 'tag' and 'params'");
  const std::string tag = j.at("tag").get<std::string>();
  const json& p = j.at("params");
  EnclosureRegion r;
  using Tag = EnclosureRegion::Tag;
  if (tag == "sector") {
    check_keys(p, {"eta", "kappa"}, "sector region");
    r.tag = Tag::Sector;
    r.eta = number_at(p, "eta", "sector region");
    r.kappa = number_at(p, "kappa", "sector region");
  } else if (tag == "parabola_a") {
    check_keys(p, {"mu", "C", "beta", "b", "im_b_norm", "xi", "apex", "k_slope"},
               "parabola_a region");
    r.tag = Tag::ParabolaA;
    r.mu = number_at(p, "mu", "parabola_a");
    r.C = number_at(p, "C", "parabola_a");
    r.beta = number_at(p, "beta", "parabola_a");
    r.b = number_at(p, "b", "parabola_a");
    r.im_b_norm = number_at(p, "im_b_norm", "parabola_a");
    r.xi = number_at(p, "xi", "parabola_a");
    r.apex = number_at(p, "apex", "parabola_a");
    r.k_slope = number_at(p, "k_slope", "parabola_a");
  } else if (tag == "parabola_b") {
    check_keys(p, {"mu", "C", "beta", "im_b_norm", "k_slope"}, "parabola_b");
    r.tag = Tag::ParabolaB;
    r.mu = number_at(p, "mu", "parabola_b");
    r.C = number_at(p, "C", "parabola_b");
    r.beta = number_at(p, "beta", "parabola_b");
    r.im_b_norm = number_at(p, "im_b_norm", "parabola_b");
    r.k_slope = number_at(p, "k_slope", "parabola_b");
  } else if (tag == "parabola_c") {
    check_keys(p, {"mu", "C", "beta", "b", "im_b_norm"}, "parabola_c");
    r.tag = Tag::ParabolaC;
    r.mu = number_at(p, "mu", "parabola_c");
    r.C = number_at(p, "C", "parabola_c");
    r.beta = number_at(p, "beta", "parabola_c");
    r.b = number_at(p, "b", "parabola_c");
    r.im_b_norm = number_at(p, "im_b_norm", "parabola_c");
  } else if (tag == "left_resolvent_free") {
    check_keys(p, {"threshold"}, "left_resolvent_free");
    r.tag = Tag::LeftResolventFree;
    r.threshold = number_at(p, "threshold", "left_resolvent_free");
  } else if (tag == "dist_disk") {
    check_keys(p, {"radius", "spectrum_base", "C", "beta"}, "dist_disk");
    r.tag = Tag::DistDisk;
    r.radius = number_at(p, "radius", "dist_disk");
    r.spectrum_base = number_at(p, "spectrum_base", "dist_disk");
    if (p.contains("C")) r.C = p.at("C").get<double>();
    if (p.contains("beta")) r.beta = p.at("beta").get<double>();
  } else if (tag == "point_disk") {
    check_keys(p, {"radius", "mu"}, "point_disk");
    r.tag = Tag::PointDisk;
    r.radius = number_at(p, "radius", "point_disk");
    r.mu = number_at(p, "mu", "point_disk");
  } else if (tag == "log_region_V" || tag == "log_region_W") {
    check_keys(p, {"c_alpha", "n"}, "log region");
    r.tag = tag == "log_region_V" ? Tag::LogRegionV : Tag::LogRegionW;
    r.c_alpha = number_at(p, "c_alpha", "log region");
    const int n = static_cast<int>(number_at(p, "n", "log region"));
    if (n != 2 && n < 3) throw Error("log region: n must be 2 or >= 3");
    r.dim_class = n == 2 ? 2 : 3;
  } else {
    throw Error("region: unknown tag '" + tag + "'");
  }
  return r;
}

json decay_to_json(const DecayEstimate& d) {
  json source;
  if (d.fitted) {
    source = json{{"fitted",
                   {{"samples", d.sample_count},
                    {"max_residual", d.max_residual},
                    {"degenerate", d.degenerate}}}};
  } else {
    source = "closed-form";
  }
  return json{{"schema_version", schema_version},
              {"C", d.C},
              {"beta", d.beta},
              {"mu", d.mu},
              {"source", source}};
}

DecayEstimate decay_from_json(const json& j) {
  check_keys(j, {"schema_version", "C", "beta", "mu", "source"}, "decay");
  if (j.contains("schema_version")) {
    const std::string v = j.at("schema_version").get<std::string>();
    if (v.substr(0, 2) != "1.")
      throw Error("decay: unsupported schema major version " + v);
  }
  DecayEstimate d;
  d.C = number_at(j, "C", "decay");
  d.beta = number_at(j, "beta", "decay");
  d.mu = number_at(j, "mu", "decay");
  if (j.contains("source") && j.at("source").is_object()) {
    d.fitted = true;
    const json& f = j.at("source").at("fitted");
    d.sample_count = f.value("samples", 0);
    d.max_residual = f.value("max_residual", 0.0);
    d.degenerate = f.value("degenerate", false);
  }
  if (!(d.C > 0.0) || !(d.beta > 0.0 && d.beta <= 1.0))
    throw Error("decay: C must be positive and beta in (0, 1]");
  return d;
}

json report_to_json(const solver::SpectrumReport& r) {
  json evs = json::array();
  for (const auto& e : r.eigenvalues)
    evs.push_back(json{{"re", e.lambda.real()},
                       {"im", e.lambda.imag()},
                       {"mult", e.multiplicity},
                       {"residual", e.residual}});
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back(json{{"eigenvalue", v.eigenvalue_index},
                            {"region", v.region_tag},
                            {"member", v.member},
                            {"margin", v.margin},
                            {"violation", v.violation}});
  return json{{"schema_version", schema_version},
              {"seed", r.seed},
              {"tol", r.tol},
              {"rect", json::array({complex_to_json(r.rect_lo),
                                    complex_to_json(r.rect_hi)})},
              {"eigenvalues", evs},
              {"warnings", r.warnings},
              {"verdicts", verdicts},
              {"containment_pass", r.containment_pass},
              {"boxes_processed", r.boxes_processed},
              {"evaluations", r.evaluations}};
}

std::vector<RegionRequest> parse_region_requests(const json& j) {
  if (!j.is_array()) throw Error("regions file: expected an array of requests");
  std::vector<RegionRequest> out;
  for (const json& e : j) {
    RegionRequest req;
    if (!e.is_object() || !e.contains("tag"))
      throw Error("region request: missing 'tag'");
    req.tag = e.at("tag").get<std::string>();
    if (req.tag == "sector") {
      check_keys(e, {"tag", "eta"}, "sector request");
      req.eta = number_at(e, "eta", "sector request");
    } else if (req.tag == "parabola") {
      check_keys(e, {"tag", "xi", "decay"}, "parabola request");
      if (e.contains("xi")) req.xi = e.at("xi").get<double>();
      if (e.contains("decay")) req.decay = decay_from_json(e.at("decay"));
    } else if (req.tag == "left_resolvent_free") {
      check_keys(e, {"tag", "decay"}, "left_resolvent_free request");
      if (e.contains("decay")) req.decay = decay_from_json(e.at("decay"));
    } else if (req.tag == "dist_disk") {
      check_keys(e, {"tag", "mode", "decay"}, "dist_disk request");
      if (e.contains("mode")) req.dist_mode = e.at("mode").get<std::string>();
      if (req.dist_mode != "spectrum" && req.dist_mode != "point")
        throw Error("dist_disk request: mode must be 'spectrum' or 'point'");
      if (e.contains("decay")) req.decay = decay_from_json(e.at("decay"));
    } else if (req.tag == "log_regions") {
      check_keys(e, {"tag", "c1", "c2", "n"}, "log_regions request");
      req.c1 = number_at(e, "c1", "log_regions request");
      req.c2 = number_at(e, "c2", "log_regions request");
      req.dim_class = static_cast<int>(number_at(e, "n", "log_regions request"));
    } else {
      throw Error("region request: unknown tag '" + req.tag + "'");
    }
    out.push_back(std::move(req));
  }
  return out;
}

void write_weyl_csv(std::ostream& os, const models::WeylModel& model,
                    const std::vector<SweepPoint>& points,
                    bool include_entries) {
  os << "# weylscope csv schema_version=" << schema_version << "\n";
  os << "lambda_re,lambda_im,norm,status";
  const bool lattice = model.lattice() != nullptr;
  if (lattice) os << ",schur_bound";
  const int dim = model.boundary_dim();
  if (include_entries && model.has_matrix()) {
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k)
        os << ",m_" << i << "_" << k << "_re,m_" << i << "_" << k << "_im";
  }
  os << "\n";
  for (const auto& p : points) {
    os << format_double(p.lambda.real()) << ',' << format_double(p.lambda.imag())
       << ',';
    const char* status = p.status == SweepPoint::Status::Ok
                             ? "ok"
                             : (p.status == SweepPoint::Status::Cut ? "cut"
                                                                    : "singular");
    if (p.status == SweepPoint::Status::Ok) os << format_double(p.norm);
    os << ',' << status;
    if (lattice) {
      os << ',';
      if (p.status == SweepPoint::Status::Ok)
        os << format_double(
            models::schur_bound_line(model.lattice()->spacing(), p.lambda));
    }
    if (include_entries && model.has_matrix()) {
      if (p.status == SweepPoint::Status::Ok) {
        const auto sample = model.weyl(p.lambda);
        for (Eigen::Index i = 0; i < dim; ++i)
          for (Eigen::Index k = 0; k < dim; ++k)
            os << ',' << format_double((*sample.matrix)(i, k).real()) << ','
               << format_double((*sample.matrix)(i, k).imag());
      } else {
        for (int i = 0; i < dim * dim; ++i) os << ",,";
      }
    }
    os << "\n";
  }
}

} // namespace weylscope::io

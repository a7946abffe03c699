#include "weylscope/grid.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace weylscope {

namespace {

double parse_number(const std::string& s) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw Error("grid: bad number '" + s + "'");
    return v;
  } catch (const std::exception&) {
    throw Error("grid: bad number '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

struct Range {
  double lo = 0.0, hi = 0.0;
  int n = 0;
  bool log = false;
};

Range parse_range(const std::string& s) {
  Range r;
  std::string body = s;
  if (body.rfind("log:", 0) == 0) {
    r.log = true;
    body = body.substr(4);
  }
  const auto parts = split(body, ':');
  if (parts.size() != 3) throw Error("grid: range must be a:b:n, got '" + s + "'");
  r.lo = parse_number(parts[0]);
  r.hi = parse_number(parts[1]);
  const double nd = parse_number(parts[2]);
  r.n = static_cast<int>(nd);
  if (r.n < 1 || nd != r.n) throw Error("grid: point count must be a positive integer");
  if (r.n > 1 && !(r.hi > r.lo)) throw Error("grid: range must be increasing");
  if (r.log && !(r.lo > 0.0)) throw Error("grid: log range needs positive endpoints");
  return r;
}

std::vector<double> materialize(const Range& r) {
  std::vector<double> out(static_cast<size_t>(r.n));
  if (r.n == 1) {
    out[0] = r.lo;
    return out;
  }
  if (r.log) {
    const double llo = std::log(r.lo), lhi = std::log(r.hi);
    for (int i = 0; i < r.n; ++i)
      out[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / double(r.n - 1));
  } else {
    for (int i = 0; i < r.n; ++i)
      out[static_cast<size_t>(i)] = r.lo + (r.hi - r.lo) * i / double(r.n - 1);
  }
  return out;
}

} // namespace

std::vector<Complex> parse_grid(const std::string& spec) {
  if (spec.empty()) throw Error("grid: empty specification");
  std::vector<Complex> points;

  if (spec.rfind("re=", 0) == 0) {
    const auto parts = split(spec, ',');
    if (parts.size() != 2 || parts[1].rfind("im=", 0) != 0)
      throw Error("grid: cartesian spec must be re=a:b:n,im=c:d:m");
    const auto re = materialize(parse_range(parts[0].substr(3)));
    const auto im = materialize(parse_range(parts[1].substr(3)));
    points.reserve(re.size() * im.size());
    for (double x : re)
      for (double y : im) points.emplace_back(x, y);
    return points;
  }

  // ray list
  for (const auto& ray : split(spec, ';')) {
    if (ray.rfind("r=", 0) != 0)
      throw Error("grid: ray spec must be r=r0:r1:n@psi");
    const auto at = ray.find('@');
    if (at == std::string::npos) throw Error("grid: ray spec missing @psi");
    const Range r = parse_range(ray.substr(2, at - 2));
    const double psi = parse_number(ray.substr(at + 1));
    for (double radius : materialize(r))
      points.push_back(radius * Complex(std::cos(psi), std::sin(psi)));
  }
  if (points.empty()) throw Error("grid: empty specification");
  return points;
}

} // namespace weylscope

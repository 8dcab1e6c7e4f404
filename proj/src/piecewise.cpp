#include "tauberlab/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace tauberlab {

PiecewiseFunction PiecewiseFunction::make_step(std::vector<double> nodes,
                                               std::vector<cplx> values) {
  PiecewiseFunction f;
  f.kind = Kind::step;
  f.nodes = std::move(nodes);
  f.values = std::move(values);
  f.validate();
  return f;
}

PiecewiseFunction PiecewiseFunction::make_linear(std::vector<double> nodes,
                                                 std::vector<cplx> values) {
  PiecewiseFunction f;
  f.kind = Kind::linear;
  f.nodes = std::move(nodes);
  f.values = std::move(values);
  f.validate();
  return f;
}

void PiecewiseFunction::validate() const {
  if (nodes.size() < 2) throw std::invalid_argument("piecewise: need at least 2 nodes");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]))
      throw std::invalid_argument("piecewise: nodes must be strictly increasing");
  for (double t : nodes)
    if (!std::isfinite(t)) throw std::invalid_argument("piecewise: non-finite node");
  const std::size_t want =
      kind == Kind::step ? nodes.size() - 1 : nodes.size();
  if (values.size() != want)
    throw std::invalid_argument("piecewise: value count does not match kind/nodes");
  for (const cplx& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("piecewise: non-finite value");
}

cplx PiecewiseFunction::eval(double t) const {
  if (t < a() || t > b()) throw std::invalid_argument("piecewise: eval outside domain");
  // First node strictly greater than t; piece index is one to its left.
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - nodes.begin());
  if (idx == 0) idx = 1;                      // t == a()
  if (idx == nodes.size()) idx = nodes.size() - 1;  // t == b()
  const std::size_t piece = idx - 1;
  if (kind == Kind::step) return values[piece];
  const double lo = nodes[piece], hi = nodes[piece + 1];
  const double w = (t - lo) / (hi - lo);
  return values[piece] * (1.0 - w) + values[piece + 1] * w;
}

bool PiecewiseFunction::is_real() const {
  for (const cplx& v : values)
    if (v.imag() != 0.0) return false;
  return true;
}

double PiecewiseFunction::sup_abs() const {
  double m = 0.0;
  for (const cplx& v : values) m = std::max(m, std::abs(v));
  return m;
}

PiecewiseFunction PiecewiseFunction::real_part() const {
  PiecewiseFunction f = *this;
  for (cplx& v : f.values) v = cplx(v.real(), 0.0);
  return f;
}

PiecewiseFunction PiecewiseFunction::imag_part() const {
  PiecewiseFunction f = *this;
  for (cplx& v : f.values) v = cplx(v.imag(), 0.0);
  return f;
}

std::string PiecewiseFunction::to_json() const {
  nlohmann::json j;
  j["kind"] = kind == Kind::step ? "step" : "linear";
  j["nodes"] = nodes;
  nlohmann::json vals = nlohmann::json::array();
  const bool real = is_real();
  for (const cplx& v : values) {
    if (real)
      vals.push_back(v.real());
    else
      vals.push_back(nlohmann::json::array({v.real(), v.imag()}));
  }
  j["values"] = std::move(vals);
  j["domain"] = {a(), b()};
  return j.dump();
}

PiecewiseFunction PiecewiseFunction::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PiecewiseFunction f;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "step")
    f.kind = Kind::step;
  else if (kind == "linear")
    f.kind = Kind::linear;
  else
    throw std::invalid_argument("piecewise: kind must be \"step\" or \"linear\"");
  f.nodes = j.at("nodes").get<std::vector<double>>();
  for (const auto& v : j.at("values")) {
    if (v.is_array()) {
      if (v.size() != 2) throw std::invalid_argument("piecewise: complex value needs [re, im]");
      f.values.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      f.values.emplace_back(v.get<double>(), 0.0);
    }
  }
  f.validate();
  if (j.contains("domain")) {
    const auto dom = j.at("domain").get<std::vector<double>>();
    if (dom.size() != 2 || dom[0] != f.a() || dom[1] != f.b())
      throw std::invalid_argument("piecewise: domain does not match node endpoints");
  }
  return f;
}

}  // namespace tauberlab

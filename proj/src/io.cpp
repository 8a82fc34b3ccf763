#include "lrc/io.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "lrc/error.hpp"

namespace lrc {

namespace {

double finite_number(const Json& j, const char* what) {
  if (!j.is_number())
    throw InvalidArgument(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw InvalidArgument(std::string(what) + ": value is not finite");
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidArgument(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json to_json(const FourierSeries& f) {
  Json coeffs = Json::array();
  // + 0.0 maps -0.0 to 0.0 so equal series serialize identically.
  for (const Complex& c : f.coefficients())
    coeffs.push_back(Json::array({c.real() + 0.0, c.imag() + 0.0}));
  Json out;
  out["N"] = f.order();
  out["coeffs"] = std::move(coeffs);
  return out;
}

FourierSeries series_from_json(const Json& j) {
  const Json& n_field = field(j, "N");
  if (!n_field.is_number_integer() || n_field.get<long>() < 0)
    throw InvalidArgument("FourierSeries: 'N' must be a nonnegative integer");
  const int order = n_field.get<int>();
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array() ||
      coeffs.size() != 2 * static_cast<std::size_t>(order) + 1)
    throw InvalidArgument("FourierSeries: 'coeffs' must hold 2N+1 pairs");
  std::vector<Complex> c;
  c.reserve(coeffs.size());
  double scale = 1.0;
  for (const Json& pair : coeffs) {
    if (!pair.is_array() || pair.size() != 2)
      throw InvalidArgument("FourierSeries: coefficient must be [re, im]");
    c.emplace_back(finite_number(pair[0], "coefficient"),
                   finite_number(pair[1], "coefficient"));
    scale = std::max(scale, std::abs(c.back()));
  }
  for (int n = 0; n <= order; ++n) {
    if (std::abs(c[order + n] - std::conj(c[order - n])) > 1e-12 * scale)
      throw InvalidArgument("FourierSeries: coefficients are not Hermitian "
                            "(the function would not be real)");
  }
  return FourierSeries(order, c);
}

Json to_json(const CircleMap& map) {
  Json out;
  out["degree"] = map.degree();
  out["periodic_part"] = to_json(map.periodic_part());
  return out;
}

CircleMap map_from_json(const Json& j) {
  const Json& d = field(j, "degree");
  if (!d.is_number_integer())
    throw InvalidArgument("CircleMap: 'degree' must be an integer");
  return CircleMap(d.get<int>(), series_from_json(field(j, "periodic_part")));
}

Json to_json(const SobolevWeights& w) {
  Json out;
  out["a"] = w.a;
  out["b"] = w.b;
  out["c"] = w.c;
  out["d"] = w.d;
  return out;
}

SobolevWeights weights_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("weights: expected an object");
  SobolevWeights w;
  if (j.contains("a")) w.a = finite_number(j["a"], "weights.a");
  if (j.contains("b")) w.b = finite_number(j["b"], "weights.b");
  if (j.contains("c")) w.c = finite_number(j["c"], "weights.c");
  if (j.contains("d")) w.d = finite_number(j["d"], "weights.d");
  w.validate();
  return w;
}

Json to_json(const ControlSolution& s) {
  Json out;
  out["epsilon"] = to_json(s.epsilon);
  out["residual"] = s.residual;
  out["norm"] = s.norm;
  out["method"] = to_string(s.method);
  return out;
}

ControlSolution solution_from_json(const Json& j) {
  ControlSolution s;
  s.epsilon = series_from_json(field(j, "epsilon"));
  s.residual = finite_number(field(j, "residual"), "residual");
  s.norm = finite_number(field(j, "norm"), "norm");
  const Json& m = field(j, "method");
  if (!m.is_string()) throw InvalidArgument("method: expected a string");
  s.method = control_method_from_string(m.get<std::string>());
  return s;
}

}  // namespace lrc

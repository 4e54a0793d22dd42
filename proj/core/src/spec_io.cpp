#include "polarcvx/spec_io.hpp"

#include "polarcvx/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace polarcvx {

namespace {

using json = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SpecError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "Infinity" || s == "+inf") return kInf;
  }
  fail(path, "expected a number");
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return number(j.at(key), path + "." + key);
}

Vec vector_of(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  if (dim > 0 && static_cast<int>(j.size()) != dim) {
    fail(path, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
    if (!std::isfinite(v[static_cast<Eigen::Index>(i)])) fail(path, "coordinates must be finite");
  }
  return v;
}

json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json vector_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

template <class F>
auto guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

ConvexBody body_from(const json& j, const std::string& path, int dim) {
  if (!j.is_object()) fail(path, "expected a body object");
  ConvexBody body = guarded(path, [&]() -> ConvexBody {
    if (j.contains("name")) {
      if (!j.at("name").is_string()) fail(path + ".name", "expected a string");
      const auto shape = named_shape_from_string(j.at("name").get<std::string>());
      if (!shape) fail(path + ".name", "unknown body '" + j.at("name").get<std::string>() + "'");
      if (dim < 1) fail(path, "named bodies need a positive dim");
      return ConvexBody::named(*shape, dim, 1.0);
    }
    if (j.contains("vertices")) {
      const json& vs = j.at("vertices");
      if (!vs.is_array()) fail(path + ".vertices", "expected an array");
      std::vector<Vec> verts;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        verts.push_back(vector_of(vs[i], path + ".vertices[" + std::to_string(i) + "]", dim));
      }
      return ConvexBody::vertices(std::move(verts));
    }
    if (j.contains("halfspaces")) {
      const json& hs = j.at("halfspaces");
      if (!hs.is_array()) fail(path + ".halfspaces", "expected an array");
      std::vector<Vec> normals;
      std::vector<double> offsets;
      for (std::size_t i = 0; i < hs.size(); ++i) {
        const std::string p = path + ".halfspaces[" + std::to_string(i) + "]";
        normals.push_back(vector_of(field(hs[i], p, "a"), p + ".a", dim));
        offsets.push_back(number(field(hs[i], p, "b"), p + ".b"));
      }
      bool unbounded = false;
      if (j.contains("allow_unbounded")) {
        if (!j.at("allow_unbounded").is_boolean()) fail(path + ".allow_unbounded", "expected a boolean");
        unbounded = j.at("allow_unbounded").get<bool>();
      }
      return ConvexBody::halfspaces(
          std::move(normals), std::move(offsets),
          unbounded ? Boundedness::allow_unbounded : Boundedness::require_bounded);
    }
    if (j.contains("linear")) {
      const json& rows = j.at("linear");
      if (!rows.is_array() || rows.empty()) fail(path + ".linear", "expected a matrix");
      const int n = static_cast<int>(rows.size());
      Mat A(n, n);
      for (int r = 0; r < n; ++r) {
        A.row(r) = vector_of(rows[static_cast<std::size_t>(r)],
                             path + ".linear[" + std::to_string(r) + "]", n)
                       .transpose();
      }
      return ConvexBody::linear_image(A, body_from(field(j, path, "body"), path + ".body", dim));
    }
    if (j.contains("intersection")) {
      const json& ps = j.at("intersection");
      if (!ps.is_array()) fail(path + ".intersection", "expected an array");
      std::vector<ConvexBody> parts;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        parts.push_back(body_from(ps[i], path + ".intersection[" + std::to_string(i) + "]", dim));
      }
      return ConvexBody::intersection(std::move(parts));
    }
    if (j.contains("sum")) {
      const json& ps = j.at("sum");
      if (!ps.is_array()) fail(path + ".sum", "expected an array");
      std::vector<ConvexBody> parts;
      std::vector<double> weights;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        parts.push_back(body_from(ps[i], path + ".sum[" + std::to_string(i) + "]", dim));
      }
      if (j.contains("weights")) {
        const Vec w = vector_of(j.at("weights"), path + ".weights", static_cast<int>(ps.size()));
        weights.assign(w.data(), w.data() + w.size());
      } else {
        weights.assign(parts.size(), 1.0);
      }
      return ConvexBody::minkowski_sum(std::move(parts), std::move(weights));
    }
    if (j.contains("polar")) return body_from(j.at("polar"), path + ".polar", dim).polar();
    fail(path, "body needs one of name, vertices, halfspaces, linear, intersection, sum, polar");
  });
  if (j.contains("scale")) {
    const double s = number(j.at("scale"), path + ".scale");
    if (!(s > 0.0) || !std::isfinite(s)) fail(path + ".scale", "scale must be positive and finite");
    if (s != 1.0) body = guarded(path, [&] { return body.scaled(s); });
  }
  if (dim > 0 && body.dim() != dim) {
    fail(path, "body dimension " + std::to_string(body.dim()) + " does not match dim " +
                   std::to_string(dim));
  }
  return body;
}

GeomCvxFn function_from(const json& j, const std::string& path, int inherited_dim) {
  if (!j.is_object()) fail(path, "expected a function object");
  int dim = inherited_dim;
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() < 1) {
      fail(path + ".dim", "expected a positive integer");
    }
    dim = j.at("dim").get<int>();
    if (inherited_dim > 0 && dim != inherited_dim) fail(path + ".dim", "does not match parent dim");
  }
  const json& fam = field(j, path, "family");
  if (!fam.is_string()) fail(path + ".family", "expected a string");
  const std::string family = fam.get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (!params.is_object()) fail(path + ".params", "expected an object");
  const std::string pp = path + ".params";
  auto body = [&](const char* key) {
    return body_from(field(j, path, key), path + "." + key, dim);
  };

  return guarded(path, [&]() -> GeomCvxFn {
    if (family == "indicator") return GeomCvxFn::indicator(body("body"));
    if (family == "gauge") return GeomCvxFn::gauge(body("body"), number_or(params, pp, "t", 1.0));
    if (family == "restricted_gauge") return GeomCvxFn::restricted_gauge(body("body"), body("domain"));
    if (family == "zero_set_gauge") return GeomCvxFn::zero_set_gauge(body("body"), body("zero_set"));
    if (family == "hinged_gauge") {
      return GeomCvxFn::hinged_gauge(body("body"), number(field(params, pp, "a"), pp + ".a"));
    }
    if (family == "power_gauge") {
      return GeomCvxFn::power_gauge(body("body"), number(field(params, pp, "p"), pp + ".p"),
                                    number_or(params, pp, "scale", 1.0));
    }
    if (family == "gauge_distance") return GeomCvxFn::gauge_distance(body("body"), body("center"));
    if (family == "max_of") {
      const json& ps = field(j, path, "parts");
      if (!ps.is_array()) fail(path + ".parts", "expected an array");
      std::vector<GeomCvxFn> parts;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        parts.push_back(function_from(ps[i], path + ".parts[" + std::to_string(i) + "]", dim));
      }
      return GeomCvxFn::max_of(std::move(parts));
    }
    if (family == "sampled") {
      const json& ps = field(j, path, "points");
      const json& vs = field(j, path, "values");
      if (!ps.is_array() || !vs.is_array()) fail(path, "points and values must be arrays");
      std::vector<Vec> points;
      std::vector<double> values;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        points.push_back(vector_of(ps[i], path + ".points[" + std::to_string(i) + "]", dim));
      }
      for (std::size_t i = 0; i < vs.size(); ++i) {
        values.push_back(number(vs[i], path + ".values[" + std::to_string(i) + "]"));
      }
      bool lower = false;
      if (j.contains("lower_bound_only")) lower = j.at("lower_bound_only").get<bool>();
      return GeomCvxFn::sampled(std::move(points), std::move(values), lower);
    }
    fail(path + ".family", "unknown family '" + family + "'");
  });
}

json body_json(const ConvexBody& body) {
  json out = json::object();
  std::visit(overloaded{
                 [&](const VertexRep& r) {
                   json vs = json::array();
                   for (const auto& v : r.vertices) vs.push_back(vector_json(v));
                   out["vertices"] = vs;
                 },
                 [&](const HalfspaceRep& r) {
                   json hs = json::array();
                   for (std::size_t i = 0; i < r.normals.size(); ++i) {
                     hs.push_back(json{{"a", vector_json(r.normals[i])}, {"b", r.offsets[i]}});
                   }
                   out["halfspaces"] = hs;
                   if (!body.bounded()) out["allow_unbounded"] = true;
                 },
                 [&](const NamedRep& r) {
                   out["name"] = std::string(to_string(r.shape));
                   out["scale"] = r.scale;
                 },
                 [&](const LinearRep& r) {
                   json rows = json::array();
                   for (Eigen::Index i = 0; i < r.matrix.rows(); ++i) {
                     rows.push_back(vector_json(r.matrix.row(i).transpose()));
                   }
                   out["linear"] = rows;
                   out["body"] = body_json(r.base);
                 },
                 [&](const IntersectionRep& r) {
                   json ps = json::array();
                   for (const auto& p : r.parts) ps.push_back(body_json(p));
                   out["intersection"] = ps;
                 },
                 [&](const SumRep& r) {
                   json ps = json::array();
                   for (const auto& p : r.parts) ps.push_back(body_json(p));
                   out["sum"] = ps;
                   out["weights"] = r.weights;
                 },
                 [&](const PolarRep& r) { out["polar"] = body_json(r.base); },
             },
             body.representation().value);
  return out;
}

json function_json(const GeomCvxFn& phi, bool top) {
  json out = json::object();
  if (top) out["dim"] = phi.dim();
  out["family"] = std::string(phi.family_name());
  std::visit(overloaded{
                 [&](const IndicatorFn& f) { out["body"] = body_json(f.body); },
                 [&](const GaugeFn& f) {
                   out["params"] = json{{"t", f.t}};
                   out["body"] = body_json(f.body);
                 },
                 [&](const RestrictedGaugeFn& f) {
                   out["body"] = body_json(f.gauge_body);
                   out["domain"] = body_json(f.domain);
                 },
                 [&](const ZeroSetGaugeFn& f) {
                   out["body"] = body_json(f.gauge_body);
                   out["zero_set"] = body_json(f.zero_set);
                 },
                 [&](const HingedGaugeFn& f) {
                   out["params"] = json{{"a", f.a}};
                   out["body"] = body_json(f.body);
                 },
                 [&](const PowerGaugeFn& f) {
                   out["params"] = json{{"p", f.p}, {"scale", f.scale}};
                   out["body"] = body_json(f.body);
                 },
                 [&](const MaxOfFn& f) {
                   json ps = json::array();
                   for (const auto& p : f.parts) ps.push_back(function_json(*p, false));
                   out["parts"] = ps;
                 },
                 [&](const SampledFn& f) {
                   json ps = json::array();
                   json vs = json::array();
                   for (std::size_t i = 0; i < f.points.size(); ++i) {
                     ps.push_back(vector_json(f.points[i]));
                     vs.push_back(number_json(f.values[i]));
                   }
                   out["lower_bound_only"] = f.lower_bound_only;
                   out["points"] = ps;
                   out["values"] = vs;
                 },
                 [&](const GaugeDistanceFn& f) {
                   out["body"] = body_json(f.gauge_body);
                   out["center"] = body_json(f.center);
                 },
             },
             phi.family());
  return out;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": malformed JSON";
    throw SpecError(os.str());
  }
}

}  // namespace

GeomCvxFn parse_function_spec(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object() || !doc.contains("dim")) fail("$", "missing field 'dim'");
  return function_from(doc, "$", 0);
}

GeomCvxFn load_function_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_function_spec(buf.str());
}

ConvexBody parse_body_spec(std::string_view json_text) {
  const json doc = parse_document(json_text);
  int dim = 0;
  if (doc.is_object() && doc.contains("dim") && doc.at("dim").is_number_integer()) {
    dim = doc.at("dim").get<int>();
  }
  return body_from(doc, "$", dim);
}

std::string function_spec_json(const GeomCvxFn& phi, int indent) {
  return function_json(phi, true).dump(indent);
}

std::string body_spec_json(const ConvexBody& body, int indent) {
  json j = body_json(body);
  j["dim"] = body.dim();
  return j.dump(indent);
}

}  // namespace polarcvx

#pragma once

// JSON encodings for the value types, used by the command line tool and by
// anything that wants to persist inputs or results.
//
// Conventions:
//   - exact scalars are strings, "n" or "n/d"; floating scalars are JSON
//     numbers (double precision on the wire)
//   - a floating scalar also accepts a rational string on input
//   - absent descriptors and absent indices are null
//   - the leading unbounded segment start of a weight spec is "-inf"
//   - infinite result values are the string "inf"
//
// Decoders rebuild objects through their validating constructors, so a
// malformed document fails with the same errors as malformed code input;
// structural problems (missing keys, wrong types) surface as the JSON
// library's exceptions.

#include <lfa/bounds.hpp>
#include <lfa/laurent.hpp>

#include <json.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lfa {

using Json = nlohmann::json;

template <Scalar S>
Json scalar_to_json(const S& v) {
  if constexpr (is_exact_v<S>)
    return rational_to_string(v);
  else
    return static_cast<double>(v);
}

template <Scalar S>
S scalar_from_json(const Json& j) {
  if constexpr (is_exact_v<S>) {
    if (!j.is_string()) throw error("scalar_from_json: expected a rational string");
    return rational_from_string(j.get<std::string>());
  } else {
    if (j.is_string()) return static_cast<S>(to_real(rational_from_string(j.get<std::string>())));
    return static_cast<S>(j.get<double>());
  }
}

namespace detail {

template <Scalar S>
Json tail_to_json(const std::optional<GeometricTail<S>>& t) {
  if (!t) return nullptr;
  return Json{{"c", scalar_to_json(t->c)}, {"sigma", scalar_to_json(t->sigma)}};
}

template <Scalar S>
std::optional<GeometricTail<S>> tail_from_json(const Json& j) {
  if (j.is_null()) return {};
  return GeometricTail<S>{scalar_from_json<S>(j.at("c")), scalar_from_json<S>(j.at("sigma"))};
}

}  // namespace detail

template <Scalar S>
Json radial_to_json(const RadialFunction<S>& f) {
  Json vals = Json::array();
  for (const auto& v : f.values()) vals.push_back(scalar_to_json(v));
  return Json{{"lo", f.lo()},
              {"values", std::move(vals)},
              {"lower_tail", detail::tail_to_json(f.lower_tail())},
              {"upper_tail", detail::tail_to_json(f.upper_tail())}};
}

template <Scalar S>
RadialFunction<S> radial_from_json(const Json& j) {
  std::vector<S> vals;
  for (const auto& v : j.at("values")) vals.push_back(scalar_from_json<S>(v));
  return RadialFunction<S>(j.at("lo").get<long>(), std::move(vals),
                           detail::tail_from_json<S>(j.value("lower_tail", Json())),
                           detail::tail_from_json<S>(j.value("upper_tail", Json())));
}

template <Scalar S>
Json kernel_to_json(const KernelSpec<S>& K) {
  auto tail = [](const std::optional<KernelTail<S>>& t) -> Json {
    if (!t) return nullptr;
    return Json{{"c", scalar_to_json(t->c)},
                {"sigma", scalar_to_json(t->sigma)},
                {"is_bound", t->is_bound}};
  };
  Json vals = Json::array();
  for (const auto& v : K.values()) vals.push_back(scalar_to_json(v));
  return Json{{"q", K.field().q},
              {"lo", K.lo()},
              {"values", std::move(vals)},
              {"lower_tail", tail(K.lower_tail())},
              {"upper_tail", tail(K.upper_tail())}};
}

template <Scalar S>
KernelSpec<S> kernel_from_json(const Json& j) {
  auto tail = [](const Json& t) -> std::optional<KernelTail<S>> {
    if (t.is_null()) return {};
    return KernelTail<S>{scalar_from_json<S>(t.at("c")), scalar_from_json<S>(t.at("sigma")),
                         t.value("is_bound", false)};
  };
  std::vector<S> vals;
  for (const auto& v : j.at("values")) vals.push_back(scalar_from_json<S>(v));
  return KernelSpec<S>(FieldParams{j.at("q").get<long>()}, j.at("lo").get<long>(),
                       std::move(vals), tail(j.value("lower_tail", Json())),
                       tail(j.value("upper_tail", Json())));
}

inline Json phi_to_json(const PhiSpec& phi) {
  Json segs = Json::array();
  for (const auto& s : phi.segments()) {
    Json seg{{"c", static_cast<double>(s.c)}, {"beta", static_cast<double>(s.beta)}};
    seg["start"] = s.start ? Json(*s.start) : Json("-inf");
    segs.push_back(std::move(seg));
  }
  return Json{{"segments", std::move(segs)}};
}

inline PhiSpec phi_from_json(const Json& j) {
  std::vector<PhiSegment> segs;
  for (const auto& s : j.at("segments")) {
    PhiSegment seg;
    const Json& start = s.at("start");
    if (start.is_string()) {
      if (start.get<std::string>() != "-inf")
        throw error("phi_from_json: segment start must be an integer or \"-inf\"");
      seg.start = std::nullopt;
    } else {
      seg.start = start.get<long>();
    }
    seg.c = static_cast<Real>(s.value("c", 1.0));
    seg.beta = static_cast<Real>(s.value("beta", 0.0));
    segs.push_back(seg);
  }
  return PhiSpec(std::move(segs));
}

inline Json laurent_to_json(const LaurentElement& x) {
  Json out{{"p", x.p}, {"digits", x.digits}, {"depth", x.depth}};
  out["valuation"] = x.valuation ? Json(*x.valuation) : Json(nullptr);
  return out;
}

inline LaurentElement laurent_from_json(const Json& j) {
  const long p = j.at("p").get<long>();
  const long depth = j.at("depth").get<long>();
  const Json& v = j.at("valuation");
  if (v.is_null()) return laurent_make(p, depth, {}, depth);
  return laurent_make(p, v.get<long>(), j.at("digits").get<std::vector<int>>(), depth);
}

inline Json real_or_inf(Real v) {
  if (std::isinf(v)) return "inf";
  return static_cast<double>(v);
}

inline Json norm_to_json(const NormResult& n) {
  return Json{{"finite", n.finite},
              {"value", real_or_inf(n.value)},
              {"argmax", n.argmax ? Json(*n.argmax) : Json(nullptr)},
              {"argmax_at_minus_infinity", n.argmax_at_minus_infinity}};
}

inline Json bound_to_json(const BoundResult& b) {
  return Json{{"value", real_or_inf(b.value)},
              {"finite", b.finite},
              {"mode", b.mode == BoundMode::closed_form ? "closed_form" : "series"},
              {"terms", b.terms},
              {"tail_bound", static_cast<double>(b.tail_bound)},
              {"condition", b.condition}};
}

template <Scalar S>
Json operator_result_to_json(const OperatorResult<S>& r) {
  return Json{{"function", radial_to_json(r.value)},
              {"exact", r.exact},
              {"error_bound", scalar_to_json(r.error_bound)}};
}

template <Scalar S>
Json point_result_to_json(const PointResult<S>& r) {
  return Json{{"value", scalar_to_json(r.value)},
              {"exact", r.exact},
              {"error_bound", scalar_to_json(r.error_bound)}};
}

}  // namespace lfa

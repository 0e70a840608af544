#pragma once

// JSON files: curves, point lists, and the report records of each module.

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "severi/bezout.hpp"
#include "severi/incidence.hpp"
#include "severi/perturb.hpp"

namespace severi {

using json = nlohmann::json;

class InputError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void field_error(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

inline const json& require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) field_error(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) field_error(where + "/" + key, "missing field");
    return *it;
}

inline int require_int(const json& obj, const std::string& key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number_integer()) field_error(where + "/" + key, "expected an integer");
    return v.get<int>();
}

/// A number, or a string "p/q". Floating literals convert exactly.
inline Rational rational_field(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) return exact_rational(v.get<double>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            field_error(where, e.what());
        }
    }
    field_error(where, "expected a number or a \"p/q\" string");
}

inline QComplex complex_field(const json& v, const std::string& where) {
    if (v.is_object()) {
        Rational re = v.contains("re") ? rational_field(v["re"], where + "/re") : Rational(0);
        Rational im = v.contains("im") ? rational_field(v["im"], where + "/im") : Rational(0);
        return QComplex(re, im);
    }
    return QComplex(rational_field(v, where));
}

}  // namespace detail

inline json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": " + detail::line_column(text, e.byte) + ": malformed JSON (" + e.what() + ")");
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

// ---- scalars and points

inline json to_json(const QComplex& z) { return json{{"re", to_string(z.re)}, {"im", to_string(z.im)}}; }
inline json to_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

template <ScalarField S>
json to_json(const ProjectivePoint<S>& p) {
    return json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])});
}

/// Points file: [{"coords": [x, y, z]}, ...].
inline std::vector<ExactPoint> points_from_json(const json& j, const std::string& where = "points") {
    if (!j.is_array()) detail::field_error(where, "expected an array of {\"coords\": [x, y, z]}");
    std::vector<ExactPoint> pts;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = where + "/" + std::to_string(k);
        const json& c = detail::require(j[k], "coords", at);
        if (!c.is_array() || c.size() != 3) detail::field_error(at + "/coords", "expected three coordinates");
        std::array<QComplex, 3> q;
        for (int i = 0; i < 3; ++i) q[i] = detail::complex_field(c[i], at + "/coords/" + std::to_string(i));
        if (q[0].is_zero() && q[1].is_zero() && q[2].is_zero())
            detail::field_error(at + "/coords", "all homogeneous coordinates are zero");
        pts.emplace_back(q);
    }
    return pts;
}

inline json points_to_json(const std::vector<ExactPoint>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(json{{"coords", to_json(p)}});
    return a;
}

// ---- curves

template <ScalarField S>
json curve_to_json(const PlaneCurve<S>& c) {
    json coeffs = json::array();
    for (const auto& e : monomials(c.degree())) {
        const auto& v = c.form().coeff(e);
        if (is_zero(v)) continue;
        json t = to_json(v);
        t["i"] = e.i;
        t["j"] = e.j;
        t["k"] = e.k;
        coeffs.push_back(t);
    }
    return json{{"degree", c.degree()}, {"coefficients", coeffs}};
}

/// {"degree": d, "coefficients": [{"i", "j", "k", "re", "im"}, ...]}.
inline ExactCurve curve_from_json(const json& j, const std::string& where = "curve") {
    const int d = detail::require_int(j, "degree", where);
    if (d < 0) detail::field_error(where + "/degree", "degree must be non-negative");
    const json& cs = detail::require(j, "coefficients", where);
    if (!cs.is_array()) detail::field_error(where + "/coefficients", "expected an array");
    std::vector<QComplex> c(monomial_count(d), QComplex(0));
    for (std::size_t s = 0; s < cs.size(); ++s) {
        const std::string at = where + "/coefficients/" + std::to_string(s);
        Exponent e{detail::require_int(cs[s], "i", at), detail::require_int(cs[s], "j", at),
                   detail::require_int(cs[s], "k", at)};
        if (e.i < 0 || e.j < 0 || e.k < 0) detail::field_error(at, "negative exponent");
        if (e.total() != d)
            detail::field_error(at, "exponents sum to " + std::to_string(e.total()) + ", expected degree " + std::to_string(d));
        Rational re = cs[s].contains("re") ? detail::rational_field(cs[s]["re"], at + "/re") : Rational(0);
        Rational im = cs[s].contains("im") ? detail::rational_field(cs[s]["im"], at + "/im") : Rational(0);
        c[monomial_index(d, e)] += QComplex(re, im);
    }
    try {
        return ExactCurve(ExactForm(d, c));
    } catch (const Error& e) {
        detail::field_error(where + "/coefficients", e.what());
    }
}

inline ExactCurve read_curve_file(const std::string& path) { return curve_from_json(read_json_file(path), path); }

// ---- reports

inline json to_json(const SingularPoint& s) {
    json j{{"kind", to_string(s.kind)}, {"hessian_det", to_json(s.hessian_determinant)}, {"chart", to_string(s.chart)}};
    j["point"] = s.exact_location ? to_json(*s.exact_location) : to_json(s.location);
    return j;
}

inline json to_json(const Membership& m) {
    json j{{"squarefree", m.squarefree},
           {"node_count", m.node_count},
           {"singular_count", m.singular_count},
           {"all_singularities_nodal", m.all_singularities_nodal}};
    j["irreducible"] = m.irreducible ? json(*m.irreducible) : json("unknown");
    j["factor_count"] = m.factor_count ? json(*m.factor_count) : json(nullptr);
    json pts = json::array();
    for (const auto& s : m.singularities) pts.push_back(to_json(s));
    j["singular_points"] = pts;
    return j;
}

inline json to_json(const RankCertificate& r) {
    json j{{"rank", r.rank}, {"mode", to_string(r.mode)}};
    j["sv_gap"] = std::isfinite(r.sv_gap) ? json(r.sv_gap) : json(nullptr);
    return j;
}

inline json to_json(const TangentDimension& t) {
    json j{{"d", t.d},        {"n", t.n},         {"L_d", l_d(t.d)},
           {"rank", t.rank},  {"tangent_dim", t.dimension}, {"expected", t.expected},
           {"pass", t.pass()}, {"mode", to_string(t.certificate.mode)}};
    j["sv_gap"] = std::isfinite(t.certificate.sv_gap) ? json(t.certificate.sv_gap) : json(nullptr);
    return j;
}

/// Verification record of a constructed configuration.
inline json verification_to_json(const ExactConfiguration& cfg) {
    json nodes = json::array(), dets = json::array();
    for (const auto& p : cfg.nodes) nodes.push_back(to_json(p));
    for (const auto& w : cfg.witnesses) dets.push_back(to_json(w.hessian_determinant));
    Rational residual_max(0);
    for (const auto& p : cfg.nodes) {
        auto uv = p.affine(p.chart());
        auto f = cfg.curve.dehomogenize(p.chart());
        for (const auto& r : {f.eval(uv[0], uv[1]), f.derivative(0).eval(uv[0], uv[1]), f.derivative(1).eval(uv[0], uv[1])}) {
            Rational m = r.norm2();
            if (m > residual_max) residual_max = m;
        }
    }
    auto adj = adjoint_condition_rank(cfg);
    return json{{"nodes", nodes},
                {"residual_max", residual_max == 0 ? json(0) : json(std::sqrt(residual_max.get_d()))},
                {"hessian_dets", dets},
                {"adjoint_rank", adj.rank},
                {"adjoint_pass", adj.pass()},
                {"complete", cfg.complete},
                {"attempts", cfg.attempts},
                {"seed", cfg.seed}};
}

inline json to_json(const BezoutResult& b) {
    json pts = json::array();
    for (const auto& p : b.points)
        pts.push_back(json{{"point", p.exact_point ? to_json(*p.exact_point) : to_json(p.point)},
                           {"multiplicity", p.multiplicity},
                           {"transversal", p.transversal}});
    return json{{"total", b.total}, {"expected", b.expected}, {"pass", b.pass()}, {"points", pts}};
}

inline json to_json(const StabilityReport& r) {
    json trials = json::array();
    for (const auto& t : r.trials)
        trials.push_back(json{{"displacement", t.displacement}, {"curve_distance", t.curve_distance}, {"failed", t.failed}});
    return json{{"label", StabilityReport::label},
                {"trials", trials},
                {"summary", json{{"max", r.max}, {"mean", r.mean}, {"failures", r.failures}}},
                {"points", r.points}};
}

inline json to_json(const TrackReport& r) {
    json nodes = json::array();
    for (const auto& n : r.nodes) {
        json j{{"original", to_json(n.original)},
               {"status", to_string(n.status)},
               {"iterations", n.iterations},
               {"displacement", n.displacement}};
        if (n.tracked) {
            j["tracked"] = to_json(*n.tracked);
            j["value"] = n.value;
            j["hessian_det"] = to_json(n.hessian_determinant);
        }
        nodes.push_back(j);
    }
    json j{{"nodes", nodes}, {"curve_distance", r.distance}};
    if (r.warning) j["warning"] = *r.warning;
    return j;
}

}  // namespace severi

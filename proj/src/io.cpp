#include "mstab/io.hpp"

namespace mstab::io {

namespace {

json big(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class big_from(const json& j, const std::string& at) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()), 10);
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
    }
  }
  throw JsonError(at, "expected an integer");
}

const json& field(const json& j, const char* key, const std::string& at) {
  if (!j.is_object()) throw JsonError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(at + "/" + key, "missing field");
  return *it;
}

int as_int(const json& j, const std::string& at) {
  if (!j.is_number_integer()) throw JsonError(at, "expected an integer");
  return j.get<int>();
}

std::vector<int> int_list(const json& j, const std::string& at) {
  if (!j.is_array()) throw JsonError(at, "expected an array of integers");
  std::vector<int> out;
  for (size_t k = 0; k < j.size(); ++k) out.push_back(as_int(j[k], at + "/" + std::to_string(k)));
  return out;
}

int label_key(const std::string& key, const std::string& at) {
  try {
    size_t used = 0;
    int l = std::stoi(key, &used);
    if (used == key.size()) return l;
  } catch (const std::exception&) {
  }
  throw JsonError(at + "/" + key, "keys must be integer labels");
}

Q rational(const mpz_class& num, const mpz_class& den, const std::string& at) {
  if (den == 0) throw JsonError(at, "zero denominator");
  Q q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

json to_json(const Quiver& q) {
  json arrows = json::array(), cycles = json::array();
  for (const Arrow& a : q.arrows()) arrows.push_back({a.src, a.dst});
  for (const Cycle& c : q.cycles()) cycles.push_back({c[0], c[1], c[2]});
  return {{"vertices", q.vertices()}, {"arrows", arrows}, {"cycles", cycles}};
}

json to_json(const Heart& h) {
  json simples = json::array();
  for (const Simple& s : h.simples()) simples.push_back({{"label", s.label}, {"class", s.cls}});
  return {{"simples", simples},
          {"extquiver", to_json(h.extquiver())},
          {"provenance", {{"word", h.provenance().word}, {"shift", h.provenance().shift}}},
          {"canonical", canonical_form(h).str()}};
}

json to_json(const CNum& z, Precision p) {
  if (p == Precision::Numeric || z.is_ball()) {
    auto a = z.approx();
    return json::array({static_cast<double>(a.real()), static_cast<double>(a.imag())});
  }
  if (z.gaussian_rational()) {
    Q re = z.re_q(), im = z.im_q();
    return json::array({big(re.get_num()), big(re.get_den()), big(im.get_num()), big(im.get_den())});
  }
  auto a = z.approx();
  return {{"exact", z.str()}, {"approx", {static_cast<double>(a.real()), static_cast<double>(a.imag())}}};
}

json to_json(const CentralCharge& z, Precision p) {
  json out = json::object();
  for (const auto& [l, c] : z) out[std::to_string(l)] = to_json(c, p);
  return out;
}

json to_json(const MultiScaleStab& m, Precision p) {
  json levels = json::array();
  for (const Level& l : m.levels) levels.push_back({{"simples", l.simples}, {"charge", to_json(l.charge, p)}});
  json rho = type_rho(m);
  return {{"schema", kSchema}, {"top_heart", to_json(m.top)}, {"levels", levels}, {"type", rho}};
}

json to_json(const LaurentPoly& f) {
  json out = json::array();
  for (const auto& [e, c] : f)
    out.push_back({e, big(c.re.get_num()), big(c.re.get_den()), big(c.im.get_num()), big(c.im.get_den())});
  return out;
}

json to_json(const EnhancedLevelGraph& g) {
  json vs = json::array(), es = json::array();
  for (const GraphVertex& v : g.vertices())
    vs.push_back({{"level", v.level}, {"zeros", v.zeros}, {"pole", v.pole}, {"parent", v.parent}});
  for (const GraphEdge& e : g.edges()) es.push_back({{"upper", e.upper}, {"lower", e.lower}, {"kappa", e.kappa}});
  return {{"n", g.n()},
          {"levels", g.depth()},
          {"pole_order", g.pole_order()},
          {"vertices", vs},
          {"edges", es},
          {"prongs", prong_count(g)},
          {"rho", graph_rho(g)},
          {"canonical", g.canonical(true)},
          {"unlabeled", g.canonical(false)}};
}

json to_json(const DoubleCover& c) {
  json vs = json::array(), es = json::array();
  for (const CoverVertex& v : c.vertices)
    vs.push_back({{"base", v.base}, {"sheet", v.sheet}, {"genus", v.genus}, {"orders", v.orders}});
  for (const CoverEdge& e : c.edges)
    es.push_back({{"base_upper", e.base_upper},
                  {"base_lower", e.base_lower},
                  {"kappa_hat", e.kappa_hat},
                  {"upper", e.upper},
                  {"lower", e.lower}});
  return {{"vertices", vs}, {"edges", es}};
}

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

json to_json(const TwistGroupData& t) {
  json levels = json::array();
  for (const LevelTwist& l : t.levels) {
    json comps = json::array();
    for (const ComponentTwist& c : l.components)
      comps.push_back({{"size", c.size},
                       {"kappa", c.kappa},
                       {"kappa_hat", c.kappa_hat},
                       {"exponent", c.exponent},
                       {"theta_power", c.theta_power}});
    levels.push_back({{"ell", l.ell}, {"components", comps}});
  }
  return {{"schema", kSchema}, {"levels", levels}};
}

Quiver quiver_from_json(const json& j, const std::string& at) {
  auto vs = int_list(field(j, "vertices", at), at + "/vertices");
  std::vector<Arrow> arrows;
  const json& ja = field(j, "arrows", at);
  if (!ja.is_array()) throw JsonError(at + "/arrows", "expected an array");
  for (size_t k = 0; k < ja.size(); ++k) {
    std::string p = at + "/arrows/" + std::to_string(k);
    auto a = int_list(ja[k], p);
    if (a.size() != 2) throw JsonError(p, "an arrow is [source, target]");
    arrows.push_back({a[0], a[1]});
  }
  std::vector<Cycle> cycles;
  if (j.contains("cycles")) {
    const json& jc = j["cycles"];
    if (!jc.is_array()) throw JsonError(at + "/cycles", "expected an array");
    for (size_t k = 0; k < jc.size(); ++k) {
      std::string p = at + "/cycles/" + std::to_string(k);
      auto c = int_list(jc[k], p);
      if (c.size() != 3) throw JsonError(p, "a cycle lists three vertices");
      cycles.push_back({c[0], c[1], c[2]});
    }
  }
  return Quiver(vs, arrows, cycles);
}

Heart heart_from_json(const json& j, const std::string& at) {
  if (j.is_string()) {  // shorthand "A<n>" for the standard heart
    std::string s = j.get<std::string>();
    if (s.size() >= 2 && (s[0] == 'A' || s[0] == 'a')) {
      try {
        return standard_heart(std::stoi(s.substr(1)));
      } catch (const std::invalid_argument&) {
      }
    }
    throw JsonError(at, "expected a heart object or 'A<n>'");
  }
  const json& js = field(j, "simples", at);
  if (!js.is_array()) throw JsonError(at + "/simples", "expected an array");
  std::vector<Simple> simples;
  for (size_t k = 0; k < js.size(); ++k) {
    std::string p = at + "/simples/" + std::to_string(k);
    Simple s;
    s.label = as_int(field(js[k], "label", p), p + "/label");
    auto cls = int_list(field(js[k], "class", p), p + "/class");
    s.cls.assign(cls.begin(), cls.end());
    simples.push_back(s);
  }
  Provenance prov;
  if (j.contains("provenance")) {
    const json& jp = j["provenance"];
    if (jp.contains("word")) prov.word = int_list(jp["word"], at + "/provenance/word");
    if (jp.contains("shift")) prov.shift = as_int(jp["shift"], at + "/provenance/shift");
  }
  return Heart(simples, quiver_from_json(field(j, "extquiver", at), at + "/extquiver"), prov);
}

QComplex qcomplex_from_json(const json& j, const std::string& at) {
  if (j.is_string()) {
    try {
      return parse_qcomplex(j.get<std::string>());
    } catch (const UsageError& e) {
      throw JsonError(at, e.what());
    }
  }
  if (j.is_number_integer()) return {Q(j.get<long>()), Q(0)};
  if (j.is_array() && j.size() == 4)
    return {rational(big_from(j[0], at + "/0"), big_from(j[1], at + "/1"), at),
            rational(big_from(j[2], at + "/2"), big_from(j[3], at + "/3"), at)};
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
    try {
      return {parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>())};
    } catch (const UsageError& e) {
      throw JsonError(at, e.what());
    }
  }
  throw JsonError(at, "expected [re_num, re_den, im_num, im_den], [\"re\", \"im\"] or \"a+bi\"");
}

CentralCharge charge_from_json(const json& j, const std::string& at) {
  if (!j.is_object()) throw JsonError(at, "expected an object keyed by label");
  CentralCharge z;
  for (const auto& [key, v] : j.items()) {
    QComplex q = qcomplex_from_json(v, at + "/" + key);
    z[label_key(key, at)] = CNum(q.re, q.im);
  }
  return z;
}

MultiScaleStab msc_from_json(const json& j, const std::string& at) {
  Heart top = heart_from_json(field(j, "top_heart", at), at + "/top_heart");
  const json& jl = field(j, "levels", at);
  if (!jl.is_array() || jl.empty()) throw JsonError(at + "/levels", "expected a nonempty array");
  std::vector<CentralCharge> charges;
  for (size_t k = 0; k < jl.size(); ++k) {
    std::string p = at + "/levels/" + std::to_string(k);
    charges.push_back(charge_from_json(field(jl[k], "charge", p), p + "/charge"));
    if (jl[k].contains("simples")) {
      auto s = int_list(jl[k]["simples"], p + "/simples");
      std::sort(s.begin(), s.end());
      std::vector<int> keys;
      for (const auto& [l, c] : charges.back()) keys.push_back(l);
      if (s != keys) throw JsonError(p + "/simples", "simples differ from the charge's labels");
    }
  }
  return validate_msc(top, charges);
}

LaurentCharge laurent_from_json(const json& j, const std::string& at) {
  if (!j.is_object()) throw JsonError(at, "expected an object keyed by label");
  LaurentCharge out;
  for (const auto& [key, v] : j.items()) {
    std::string p = at + "/" + key;
    int l = label_key(key, at);
    if (v.is_string()) {
      try {
        out[l] = parse_laurent(v.get<std::string>());
      } catch (const UsageError& e) {
        throw JsonError(p, e.what());
      }
      continue;
    }
    if (!v.is_array()) throw JsonError(p, "expected a term list or a string");
    LaurentPoly f;
    for (size_t k = 0; k < v.size(); ++k) {
      std::string pk = p + "/" + std::to_string(k);
      if (!v[k].is_array() || v[k].size() != 5) throw JsonError(pk, "a term is [power, re_num, re_den, im_num, im_den]");
      int e = as_int(v[k][0], pk + "/0");
      json rest = json::array({v[k][1], v[k][2], v[k][3], v[k][4]});
      f = laurent_add(f, LaurentPoly{{e, qcomplex_from_json(rest, pk)}});
    }
    out[l] = f;
  }
  return out;
}

json parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonError("", std::string("malformed JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("schema")) {
    if (!j["schema"].is_number_integer()) throw JsonError("/schema", "expected an integer");
    if (j["schema"].get<int>() != kSchema)
      throw JsonError("/schema", "unsupported schema " + j["schema"].dump());
  }
  return j;
}

}  // namespace mstab::io

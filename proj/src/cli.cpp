#include "mstab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mstab/io.hpp"

namespace mstab::cli {

namespace {

using io::json;
using io::Precision;

struct Common {
  std::string format = "json";
  std::string precision;  // empty: environment, then exact
  std::string input;
  std::string inline_json;
};

Precision precision_of(const Common& c) {
  std::string p = c.precision;
  if (p.empty()) {
    const char* env = std::getenv("MSTAB_PRECISION");
    p = env ? env : "exact";
  }
  if (p == "exact") return Precision::Exact;
  if (p == "numeric") return Precision::Numeric;
  throw UsageError("precision must be 'exact' or 'numeric', got '" + p + "'");
}

std::string num17(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

std::string show(const CNum& z, Precision p) {
  if (p == Precision::Exact && !z.is_ball()) return z.str();
  auto a = z.approx();
  return num17(a.real()) + (a.imag() < 0 ? " - " : " + ") + num17(std::abs(a.imag())) + "i";
}

json read_document(const Common& c) {
  if (!c.inline_json.empty()) return io::parse_document(c.inline_json);
  if (c.input.empty()) throw UsageError("no input: give --input FILE or --json TEXT");
  std::stringstream ss;
  if (c.input == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(c.input);
    if (!f) throw UsageError("cannot read '" + c.input + "'");
    ss << f.rdbuf();
  }
  return io::parse_document(ss.str());
}

// Inputs are always read exactly; the precision mode only changes how
// results are printed. Non-exact angles fall back to balls on their own.
Lambda lambda_of(const std::string& text) { return Lambda(parse_qcomplex(text)); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  if (out.empty()) throw UsageError("empty list '" + s + "'");
  return out;
}

Heart heart_arg(const std::string& name) { return io::heart_from_json(json(name), "--heart"); }

// The msc of the input document; a bare stability condition {heart, charge}
// is read as a one-level datum.
MultiScaleStab msc_input(const Common& c) {
  json j = read_document(c);
  if (j.is_object() && j.contains("levels")) return io::msc_from_json(j);
  if (j.is_object() && j.contains("heart") && j.contains("charge")) {
    Heart h = io::heart_from_json(j["heart"], "/heart");
    return validate_msc(h, {io::charge_from_json(j["charge"], "/charge")});
  }
  throw io::JsonError("", "expected a multi-scale datum {top_heart, levels} or {heart, charge}");
}

void print_msc(const MultiScaleStab& m, const Common& c, std::ostream& out) {
  Precision p = precision_of(c);
  if (c.format == "json") {
    out << io::to_json(m, p).dump(2) << "\n";
    return;
  }
  if (c.format != "table") throw UsageError("multi-scale data print as json or table");
  out << "top heart: " << canonical_form(m.top).str() << "\n";
  for (int i = 0; i <= m.depth(); ++i) {
    out << "level " << i << ":";
    for (int l : m.quotient_simples(i)) out << "  Z(" << l << ") = " << show(m.levels[i].charge.at(l), p);
    out << "\n";
  }
}

int cmd_tilt(const Common& c, const std::string& heart, const std::string& word, std::ostream& out) {
  Heart h = heart.empty() ? io::heart_from_json(read_document(c)) : heart_arg(heart);
  std::vector<int> letters;
  std::istringstream is(word);
  for (std::string tok; is >> tok;) {
    try {
      letters.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("tilt words are signed labels, got '" + tok + "'");
    }
  }
  Heart r = apply_tilt_word(h, letters);
  json j = io::to_json(r);
  j["schema"] = io::kSchema;
  if (c.format == "table")
    out << canonical_form(r).str() << "\n";
  else
    out << j.dump(2) << "\n";
  return 0;
}

int cmd_exchange(const Common& c, const std::string& heart, int radius, bool intermediate, std::ostream& out) {
  Heart h = heart.empty() ? io::heart_from_json(read_document(c)) : heart_arg(heart);
  if (intermediate) {
    auto hs = intermediate_hearts(h);
    if (c.format == "table") {
      out << hs.size() << " intermediate hearts\n";
      for (const Heart& x : hs) out << "  " << canonical_form(x).str() << "\n";
    } else {
      json arr = json::array();
      for (const Heart& x : hs) arr.push_back(io::to_json(x));
      out << json{{"schema", io::kSchema}, {"count", hs.size()}, {"hearts", arr}}.dump(2) << "\n";
    }
    return 0;
  }
  ExchangeGraph g = exchange_graph(h, radius);
  if (c.format == "dot") {
    out << g.to_dot();
  } else if (c.format == "table") {
    out << g.vertices.size() << " hearts, " << g.edges.size() << " edges\n";
    for (const auto& e : g.edges) out << "  " << e.from << " -" << e.label << "-> " << e.to << "\n";
  } else {
    json vs = json::array(), es = json::array();
    for (const Heart& x : g.vertices) vs.push_back(canonical_form(x).str());
    for (const auto& e : g.edges) es.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
    out << json{{"schema", io::kSchema}, {"vertices", vs}, {"edges", es}}.dump(2) << "\n";
  }
  return 0;
}

int cmd_defect(const Common& c, const std::string& lambdas, const std::string& taus, std::ostream& out) {
  MultiScaleStab m = msc_input(c);
  precision_of(c);  // rejects a bad flag; the rows are numeric in both modes
  json rows = json::array();
  bool all_within = true;
  if (c.format == "table") out << "lambda\ttau\tmax_defect\tbound\twithin\tell\n";
  for (const auto& ls : split_list(lambdas))
    for (const auto& ts : split_list(taus)) {
      DefectResult r = commutation_defect(m, lambda_of(ls), lambda_of(ts));
      all_within &= r.within_bound;
      if (c.format == "table") {
        out << ls << "\t" << ts << "\t" << num17(r.max_simple_defect) << "\t" << num17(r.bound) << "\t"
            << (r.within_bound ? "yes" : "no") << "\t" << r.ell << "\n";
      } else {
        rows.push_back({{"lambda", ls},
                        {"tau", ts},
                        {"max_simple_defect", static_cast<double>(r.max_simple_defect)},
                        {"defect_radius", static_cast<double>(r.max_defect_radius)},
                        {"zero_certified", r.zero_certified},
                        {"bound", static_cast<double>(r.bound)},
                        {"ell", r.ell},
                        {"within_bound", r.within_bound},
                        {"sigma_tilde_intermediate", r.tilde_intermediate},
                        {"sigma_hat_intermediate", r.hat_intermediate}});
      }
    }
  if (c.format != "table") out << json{{"schema", io::kSchema}, {"rows", rows}}.dump(2) << "\n";
  return all_within ? 0 : 1;
}

int cmd_limit(const Common& c, const std::string& heart, const std::string& family, std::ostream& out) {
  Heart h;
  LaurentCharge zc;
  if (!family.empty()) {
    h = heart_arg(heart.empty() ? "A2" : heart);
    auto fs = parse_family(family);
    auto labs = h.labels();
    if (fs.size() != labs.size())
      throw UsageError("family has " + std::to_string(fs.size()) + " entries for " + std::to_string(labs.size()) +
                       " simples");
    for (size_t k = 0; k < labs.size(); ++k) zc[labs[k]] = fs[k];
  } else {
    json j = read_document(c);
    h = io::heart_from_json(j.contains("heart") ? j["heart"] : json(heart), "/heart");
    if (!j.contains("family")) throw io::JsonError("/family", "missing field");
    zc = io::laurent_from_json(j["family"], "/family");
  }
  LimitResult r = extract_limit(h, zc);
  Precision p = precision_of(c);
  if (c.format == "table") {
    print_msc(r.msc, c, out);
    if (r.lambda) out << "rotation lambda = " << to_string(*r.lambda) << "\n";
    return 0;
  }
  json j = io::to_json(r.msc, p);
  json leads = json::array();
  for (const auto& l : r.leads) leads.push_back(io::to_json(l, p));
  json fam = json::object();
  for (const auto& [l, f] : r.family) fam[std::to_string(l)] = io::to_json(f);
  j["rotation"] = r.lambda ? json(to_string(*r.lambda)) : json(nullptr);
  j["unrotated_leads"] = leads;
  j["family"] = fam;
  j["exact_decisions"] = r.exact_decisions;
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_strata(const Common& c, int n, int levels, bool labeled, bool census, bool poset, bool cover,
               std::ostream& out) {
  if (census) {
    out << census_report(n, levels);
    return 0;
  }
  auto graphs = enumerate_graphs(n, levels, labeled);
  if (c.format == "dot") {
    for (const auto& g : graphs) out << g.to_dot();
    return 0;
  }
  if (c.format == "table") {
    // counts by unlabeled type
    std::map<std::string, int> count;
    std::map<std::string, EnhancedLevelGraph> rep;
    for (const auto& g : graphs) {
      ++count[g.canonical(false)];
      rep.emplace(g.canonical(false), g);
    }
    out << "n=" << n << " levels<=" << levels << (labeled ? " labeled" : " unlabeled") << " total=" << graphs.size()
        << "\n";
    for (const auto& [k, cnt] : count) {
      out << "  " << k << "  L=" << rep.at(k).depth() << " rho=";
      for (const auto& r : graph_rho(rep.at(k))) {
        out << "(";
        for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << ")";
      }
      out << " prongs=" << prong_count(rep.at(k)) << " count=" << cnt << "\n";
    }
    return 0;
  }
  json gs = json::array();
  for (const auto& g : graphs) {
    json jg = io::to_json(g);
    if (cover) jg["double_cover"] = io::to_json(double_cover(g));
    gs.push_back(jg);
  }
  json j{{"schema", io::kSchema}, {"n", n}, {"max_levels", levels}, {"labeled", labeled}, {"count", graphs.size()},
         {"graphs", gs}};
  if (poset) {
    std::vector<EnhancedLevelGraph> all = graphs;
    all.push_back(smooth_graph(n));
    json rel = json::array();
    for (const auto& r : adjacency_poset(all, labeled))
      rel.push_back({{"lower", r.lower}, {"upper", r.upper}, {"passages", r.passages}});
    j["smooth_index"] = all.size() - 1;
    j["relations"] = rel;
  }
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_braid(const Common& c, int n, const std::string& heart, const std::string& word, std::ostream& out) {
  Quiver q = heart.empty() ? make_linear(n) : heart_arg(heart).extquiver();
  IntMatrix m = word_matrix(q, parse_braid_word(word));
  if (c.format == "table") {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) out << (k ? " " : "") << m(r, k);
      out << "\n";
    }
  } else {
    out << json{{"schema", io::kSchema}, {"word", word}, {"matrix", io::to_json(m)}}.dump(2) << "\n";
  }
  return 0;
}

Rho parse_rho(const std::string& text) {
  // "(1,1)(1)" or JSON [[1,1],[1]]
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (!s.empty() && s[0] == '[') {
    json j = io::parse_document(s);
    try {
      return j.get<Rho>();
    } catch (const json::exception&) {
      throw io::JsonError("", "type must be a list of lists of integers");
    }
  }
  Rho rho;
  size_t k = 0;
  while (k < s.size()) {
    if (s[k] != '(') throw UsageError("type must look like (1,1)(2), got '" + text + "'");
    size_t e = s.find(')', k);
    if (e == std::string::npos) throw UsageError("unbalanced parenthesis in '" + text + "'");
    std::vector<int> level;
    for (const auto& part : split_list(s.substr(k + 1, e - k - 1))) {
      try {
        level.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw UsageError("bad component size '" + part + "'");
      }
    }
    rho.push_back(level);
    k = e + 1;
  }
  if (rho.empty()) throw UsageError("empty type");
  return rho;
}

int cmd_twist(const Common& c, const std::string& rho_text, std::ostream& out) {
  TwistGroupData t = simple_twist_data(parse_rho(rho_text));
  if (c.format == "table") {
    out << "level\tell\tsize\tkappa\tkappa_hat\texponent\ttheta_power\n";
    for (size_t i = 0; i < t.levels.size(); ++i)
      for (const auto& cp : t.levels[i].components)
        out << i + 1 << "\t" << t.levels[i].ell << "\t" << cp.size << "\t" << cp.kappa << "\t" << cp.kappa_hat
            << "\t" << cp.exponent << "\t" << cp.theta_power << "\n";
  } else {
    out << io::to_json(t).dump(2) << "\n";
  }
  return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"multi-scale stability conditions toolkit", "mstab"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s, bool with_input) {
    s->add_option("--format", c.format, "json | dot | table")->check(CLI::IsMember({"json", "dot", "table"}));
    s->add_option("--precision", c.precision, "exact | numeric (default: $MSTAB_PRECISION, else exact)");
    if (with_input) {
      s->add_option("--input", c.input, "JSON input file, - for stdin");
      s->add_option("--json", c.inline_json, "inline JSON input");
    }
  };

  std::string heart, word, family, lambda_s = "0", tau_s, lambdas = "0", taus = "1/2-i", rho;
  int radius = 2, n = 2, levels = 1, j_level = 0;
  bool intermediate = false, labeled = false, census = false, poset = false, cover = false;
  std::vector<std::string> tau_list;

  auto* tilt = app.add_subcommand("tilt", "apply a word of simple tilts (signed labels) to a heart");
  common(tilt, true);
  tilt->add_option("--heart", heart, "standard heart A<n>");
  tilt->add_option("--word", word, "e.g. \"1 -2 3\"; positive = forward")->required();

  auto* xg = app.add_subcommand("exchange-graph", "breadth-first exchange graph of simple tilts");
  common(xg, true);
  xg->add_option("--heart", heart, "standard heart A<n>");
  xg->add_option("--radius", radius, "number of forward tilt layers");
  xg->add_flag("--intermediate", intermediate, "list the hearts between h and h[1] instead");

  auto* ca = app.add_subcommand("c-act", "act by lambda on a (multi-scale) stability condition");
  common(ca, true);
  ca->add_option("--lambda", lambda_s, "complex number, e.g. 1/3+2i")->required();
  ca->add_option("--from-level", j_level, "act on levels j..L only");

  auto* mv = app.add_subcommand("msc-validate", "check a multi-scale datum and report its type");
  common(mv, true);

  auto* pl = app.add_subcommand("plumb", "merge all levels with the given plumbing parameters");
  common(pl, true);
  pl->add_option("--tau", tau_list, "one per level 1..L, deepest last; 'inf' keeps the level")->required();

  auto* df = app.add_subcommand("defect", "commutation defect table over a lambda x tau grid");
  common(df, true);
  df->add_option("--lambdas", lambdas, "comma separated lambda values");
  df->add_option("--taus", taus, "comma separated tau values");

  auto* lm = app.add_subcommand("limit", "limit of a Laurent family of central charges");
  common(lm, true);
  lm->add_option("--heart", heart, "standard heart A<n> (default A2)");
  lm->add_option("--family", family, "e.g. '(-1+it, 1+it)'");

  auto* st = app.add_subcommand("strata", "enhanced level graphs of the stratum Q_n");
  common(st, false);
  st->add_option("--n", n, "the stratum has n+1 simple zeros")->required()->check(CLI::Range(1, 10));
  st->add_option("--levels", levels, "maximal number of levels below zero")->check(CLI::Range(1, 10));
  st->add_flag("--labeled", labeled, "distinguish the zeros");
  st->add_flag("--census", census, "counts, types and undegenerations as text");
  st->add_flag("--poset", poset, "include the undegeneration relations");
  st->add_flag("--double-cover", cover, "include the double covers");

  auto* br = app.add_subcommand("braid", "K-theory matrix of a braid word of spherical twists");
  common(br, false);
  br->add_option("--n", n, "linear A_n quiver")->check(CLI::Range(1, 64));
  br->add_option("--heart", heart, "use the ext-quiver of this heart instead");
  br->add_option("--word", word, "e.g. '(1 2)^3' or '1 -2'")->required();

  auto* tw = app.add_subcommand("twist-data", "kappa, kappa_hat, ell and exponents of a type");
  common(tw, false);
  tw->add_option("--rho", rho, "e.g. '(1,1)(2)' or '[[1,1],[2]]'")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (*tilt) return cmd_tilt(c, heart, word, out);
  if (*xg) return cmd_exchange(c, heart, radius, intermediate, out);
  if (*ca) {
    MultiScaleStab m = msc_input(c);
    print_msc(c_act_levels(m, lambda_of(lambda_s), j_level), c, out);
    return 0;
  }
  if (*mv) {
    print_msc(msc_input(c), c, out);
    return 0;
  }
  if (*pl) {
    MultiScaleStab m = msc_input(c);
    PlumbingParams tau;
    for (const auto& t : tau_list)
      tau.push_back(t == "inf" ? std::nullopt : std::optional<Lambda>(lambda_of(t)));
    print_msc(plumb(m, tau), c, out);
    return 0;
  }
  if (*df) return cmd_defect(c, lambdas, taus, out);
  if (*lm) return cmd_limit(c, heart, family, out);
  if (*st) return cmd_strata(c, n, levels, labeled, census, poset, cover, out);
  if (*br) return cmd_braid(c, n, heart, word, out);
  if (*tw) return cmd_twist(c, rho, out);
  throw InternalError("no subcommand dispatched");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    return 1;
  } catch (const PrecisionError& e) {
    err << "undecidable at this precision: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace mstab::cli

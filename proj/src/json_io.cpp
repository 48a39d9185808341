#include "cfx/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cfx/errors.hpp"

namespace cfx {

namespace {

void dump_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_rec(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (j.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer: out += std::to_string(j.get<long long>()); break;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<unsigned long long>()); break;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    case Json::value_t::string: dump_string(out, j.get<std::string>()); break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // flat arrays of scalars stay on one line, nested ones get broken up
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += scalars ? ", " : ",";
        if (!scalars) {
          out += '\n';
          out += pad;
        }
        dump_rec(out, e, indent, depth + 1);
        first = false;
      }
      if (!scalars) {
        out += '\n';
        out += close_pad;
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        out += '\n';
        out += pad;
        dump_string(out, it.key());
        out += ": ";
        dump_rec(out, it.value(), indent, depth + 1);
        first = false;
      }
      out += '\n';
      out += close_pad;
      out += '}';
      break;
    }
    default: out += "null";
  }
}

const Json& require_key(const Json& j, const char* key, const char* ctx) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string(ctx) + ": missing key \"" + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key, const char* ctx) {
  const Json& v = require_key(j, key, ctx);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw InputError(std::string(ctx) + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(out, j, indent, 0);
  out += '\n';
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("JSON parse failure in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path);
  out << text;
}

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<long long>(v.get_si()));
  return Json(v.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_number_unsigned()) {
    unsigned long long u = j.get<unsigned long long>();
    Int out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof u, 0, 0, &u);
    return out;
  }
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw InputError("bad integer string: \"" + j.get<std::string>() + "\"");
    }
  }
  throw InputError("expected an integer (number or decimal string)");
}

Json ivec_to_json(const IVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

IVec ivec_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer array");
  IVec out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(int_from_json(e));
  return out;
}

Json imat_to_json(const IMat& m) {
  Json a = Json::array();
  for (const IVec& row : m) a.push_back(ivec_to_json(row));
  return a;
}

IMat imat_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a matrix (array of integer arrays)");
  IMat out;
  out.reserve(j.size());
  for (const Json& row : j) out.push_back(ivec_from_json(row));
  return out;
}

Json rat_to_json(const Rat& q) { return Json(rat_to_string(q)); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(int_from_json(j));
  if (j.is_string()) {
    try {
      return rat_from_string(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw InputError("bad rational string: \"" + j.get<std::string>() + "\"");
    }
  }
  throw InputError("expected a rational (\"p/q\" string or integer)");
}

Json qvec_to_json(const QVec& v) {
  Json a = Json::array();
  for (const Rat& q : v) a.push_back(rat_to_json(q));
  return a;
}

Json seed_to_json(const ExchangeMatrix& ex) {
  Json j = Json::object();
  j["n"] = ex.n;
  j["eps"] = imat_to_json(ex.eps);
  j["d"] = ivec_to_json(ex.d);
  if (!ex.labels.empty()) j["labels"] = ex.labels;
  return j;
}

ExchangeMatrix seed_from_json(const Json& j) {
  ExchangeMatrix ex;
  ex.n = int_field(j, "n", "seed");
  ex.eps = imat_from_json(require_key(j, "eps", "seed"));
  ex.d = ivec_from_json(require_key(j, "d", "seed"));
  if (j.contains("labels")) {
    const Json& L = j.at("labels");
    if (!L.is_array()) throw InputError("seed: \"labels\" must be an array of strings");
    for (const Json& s : L) {
      if (!s.is_string()) throw InputError("seed: \"labels\" must be an array of strings");
      ex.labels.push_back(s.get<std::string>());
    }
  }
  require_valid(ex);
  return ex;
}

Json path_to_json(const Path& p) {
  Json a = Json::array();
  for (const Edge& e : p) {
    Json o = Json::object();
    if (std::holds_alternative<MutEdge>(e)) {
      o["mut"] = std::get<MutEdge>(e).k;
    } else {
      const SwapEdge& s = std::get<SwapEdge>(e);
      o["swap"] = Json::array({s.i, s.j});
    }
    a.push_back(o);
  }
  return a;
}

Path path_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("path: expected an array of edge objects");
  Path p;
  p.reserve(j.size());
  for (const Json& o : j) {
    if (!o.is_object()) throw InputError("path: each edge must be an object");
    if (o.contains("mut")) {
      const Json& k = o.at("mut");
      if (!k.is_number_integer() && !k.is_number_unsigned())
        throw InputError("path: \"mut\" must be an integer index");
      p.push_back(MutEdge{k.get<int>()});
    } else if (o.contains("swap")) {
      const Json& s = o.at("swap");
      if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() ||
          !s[1].is_number_integer())
        throw InputError("path: \"swap\" must be a pair of integer indices");
      p.push_back(SwapEdge{s[0].get<int>(), s[1].get<int>()});
    } else {
      throw InputError("path: edge object needs a \"mut\" or \"swap\" key");
    }
  }
  return p;
}

Json laurent_to_json(const LaurentPoly& f) {
  Json j = Json::object();
  j["n"] = f.n;
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms) {
    Json t = Json::object();
    t["exp"] = Json(e);
    t["coef"] = c.get_str();
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

LaurentPoly laurent_from_json(const Json& j) {
  const int n = int_field(j, "n", "laurent");
  if (n < 0) throw InputError("laurent: negative rank");
  LaurentPoly f = LaurentPoly::zero(n);
  const Json& terms = require_key(j, "terms", "laurent");
  if (!terms.is_array()) throw InputError("laurent: \"terms\" must be an array");
  for (const Json& t : terms) {
    const Json& ej = require_key(t, "exp", "laurent term");
    if (!ej.is_array() || static_cast<int>(ej.size()) != n)
      throw InputError("laurent term: \"exp\" must have length n");
    Expo e;
    e.reserve(ej.size());
    for (const Json& x : ej) {
      if (!x.is_number_integer() && !x.is_number_unsigned())
        throw InputError("laurent term: exponents must be integers");
      e.push_back(x.get<int>());
    }
    const Int c = int_from_json(require_key(t, "coef", "laurent term"));
    if (c == 0) continue;
    f = lp_add(f, LaurentPoly::monomial(n, e, c));
  }
  return f;
}

std::vector<NamedLoop> loops_from_json(const Json& j) {
  std::vector<NamedLoop> out;
  auto one = [&](const Json& o, std::size_t idx) {
    NamedLoop nl;
    nl.name = o.contains("name") && o.at("name").is_string()
                  ? o.at("name").get<std::string>()
                  : "loop" + std::to_string(idx);
    nl.path = path_from_json(require_key(o, "path", "loop"));
    out.push_back(std::move(nl));
  };
  if (j.is_object() && j.contains("loops")) {
    const Json& arr = j.at("loops");
    if (!arr.is_array()) throw InputError("loops file: \"loops\" must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) one(arr[i], i);
  } else if (j.is_object() && j.contains("path")) {
    one(j, 0);
  } else {
    throw InputError("loops file: expected {\"loops\": [...]} or a single {\"path\": [...]}");
  }
  return out;
}

std::vector<std::pair<std::string, LaurentPoly>> filling_from_json(const Json& j) {
  const Json& arr = require_key(j, "elements", "filling file");
  if (!arr.is_array()) throw InputError("filling file: \"elements\" must be an array");
  std::vector<std::pair<std::string, LaurentPoly>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string name = arr[i].is_object() && arr[i].contains("name") &&
                               arr[i].at("name").is_string()
                           ? arr[i].at("name").get<std::string>()
                           : "part" + std::to_string(i);
    out.emplace_back(std::move(name), laurent_from_json(arr[i]));
  }
  return out;
}

WeylInput weyl_from_json(const Json& j) {
  WeylInput w;
  w.cartan = imat_from_json(require_key(j, "cartan", "weyl input"));
  w.coxeter_eps = imat_from_json(require_key(j, "coxeter_eps", "weyl input"));
  w.m = int_field(j, "m", "weyl input");
  w.eps = seed_from_json(require_key(j, "eps", "weyl input"));
  const Json& lab = require_key(j, "labeling", "weyl input");
  if (!lab.is_array()) throw InputError("weyl input: \"labeling\" must be an array of pairs");
  for (const Json& pr : lab) {
    if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number_integer() ||
        !pr[1].is_number_integer())
      throw InputError("weyl input: each labeling entry must be [slot, family]");
    w.labeling.emplace_back(pr[0].get<int>(), pr[1].get<int>());
  }
  if (j.contains("family_names")) {
    const Json& fn = j.at("family_names");
    if (!fn.is_array()) throw InputError("weyl input: \"family_names\" must be a string array");
    for (const Json& s : fn) {
      if (!s.is_string()) throw InputError("weyl input: \"family_names\" must be a string array");
      w.family_names.push_back(s.get<std::string>());
    }
  } else {
    for (std::size_t s = 0; s < w.cartan.size(); ++s)
      w.family_names.push_back("s" + std::to_string(s));
  }
  require_valid_weyl(w);
  return w;
}

Json weyl_to_json(const WeylInput& w) {
  Json j = Json::object();
  j["family_names"] = w.family_names;
  j["cartan"] = imat_to_json(w.cartan);
  j["coxeter_eps"] = imat_to_json(w.coxeter_eps);
  j["m"] = w.m;
  j["eps"] = seed_to_json(w.eps);
  Json lab = Json::array();
  for (const auto& [slot, fam] : w.labeling) lab.push_back(Json::array({slot, fam}));
  j["labeling"] = lab;
  return j;
}

}  // namespace cfx
